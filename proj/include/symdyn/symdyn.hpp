#pragma once

#include "symdyn/analysis.hpp"
#include "symdyn/coupled.hpp"
#include "symdyn/digraph.hpp"
#include "symdyn/domain.hpp"
#include "symdyn/error.hpp"
#include "symdyn/kasner.hpp"
#include "symdyn/onedmap.hpp"
#include "symdyn/semiconj.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/transition_matrix.hpp"
