#pragma once

#define POLARON_VERSION_MAJOR 0
#define POLARON_VERSION_MINOR 1
#define POLARON_VERSION_PATCH 0
#define POLARON_VERSION "0.1.0"
