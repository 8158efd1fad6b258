#pragma once

// Umbrella header: the whole library.

#include "gcf/config.hpp"
#include "gcf/csv.hpp"
#include "gcf/diagnostics.hpp"
#include "gcf/errors.hpp"
#include "gcf/flow.hpp"
#include "gcf/lemma_q.hpp"
#include "gcf/log.hpp"
#include "gcf/shapes.hpp"
#include "gcf/soliton.hpp"
#include "gcf/soliton_residual.hpp"
#include "gcf/support.hpp"
