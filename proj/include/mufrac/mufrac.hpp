#ifndef MUFRAC_MUFRAC_HPP
#define MUFRAC_MUFRAC_HPP

#include "capacity.hpp"
#include "dyadic.hpp"
#include "error.hpp"
#include "experiment.hpp"
#include "filters.hpp"
#include "io.hpp"
#include "leaders.hpp"
#include "mfspec.hpp"
#include "norms.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "synthesis.hpp"
#include "wavelet.hpp"

#endif  // MUFRAC_MUFRAC_HPP
