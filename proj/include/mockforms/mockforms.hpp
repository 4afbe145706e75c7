#pragma once

// Umbrella header: exact q-series engine, jets, special functions, and the
// named check registry.

#include "mockforms/rational.hpp"
#include "mockforms/gaussian.hpp"
#include "mockforms/qseries.hpp"
#include "mockforms/qseries_io.hpp"
#include "mockforms/wjet.hpp"
#include "mockforms/classical_forms.hpp"
#include "mockforms/appell.hpp"
#include "mockforms/gw_potential.hpp"
#include "mockforms/report.hpp"
#include "mockforms/sampling.hpp"
#include "mockforms/checks.hpp"
#include "mockforms/registry.hpp"
