#pragma once

#include "wavekit/common.hpp"
#include "wavekit/compress.hpp"
#include "wavekit/dilation.hpp"
#include "wavekit/fft.hpp"
#include "wavekit/filters.hpp"
#include "wavekit/fwt.hpp"
#include "wavekit/io.hpp"
#include "wavekit/jsr.hpp"
