#pragma once

#define LPC_VERSION_STRING "0.1.0"
