#pragma once

#include "saddleli/specfun/bernoulli.hpp"
#include "saddleli/specfun/gamma.hpp"
#include "saddleli/specfun/harmonic.hpp"
#include "saddleli/specfun/hurwitz.hpp"
#include "saddleli/specfun/sieve.hpp"
#include "saddleli/specfun/stieltjes.hpp"
