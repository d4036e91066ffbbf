#pragma once

#include "plcsim/blanking.hpp"
#include "plcsim/block.hpp"
#include "plcsim/channel.hpp"
#include "plcsim/csv.hpp"
#include "plcsim/error.hpp"
#include "plcsim/experiments.hpp"
#include "plcsim/fft.hpp"
#include "plcsim/metrics.hpp"
#include "plcsim/parallel.hpp"
#include "plcsim/qam.hpp"
#include "plcsim/random.hpp"
#include "plcsim/slm.hpp"
