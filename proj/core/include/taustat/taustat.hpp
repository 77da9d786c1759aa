#pragma once

#include "taustat/bands.hpp"
#include "taustat/bootstrap.hpp"
#include "taustat/cases.hpp"
#include "taustat/csv.hpp"
#include "taustat/error.hpp"
#include "taustat/interval.hpp"
#include "taustat/null_test.hpp"
#include "taustat/pair_table.hpp"
#include "taustat/parallel.hpp"
#include "taustat/rng.hpp"
#include "taustat/stats.hpp"
#include "taustat/synthetic.hpp"
#include "taustat/tau.hpp"
#include "taustat/tau_curve.hpp"
