#pragma once

#include "psembed/bench.hpp"
#include "psembed/embed_exact.hpp"
#include "psembed/embed_general.hpp"
#include "psembed/generate.hpp"
#include "psembed/geometry.hpp"
#include "psembed/instance.hpp"
#include "psembed/mapping.hpp"
#include "psembed/range_oracle.hpp"
#include "psembed/rep_tree.hpp"
#include "psembed/svg.hpp"
#include "psembed/verify.hpp"
