#pragma once

#define DIOCOUNT_VERSION "0.1.0"
