#pragma once

#include "ampcoh/bounds.hpp"
#include "ampcoh/closed_form.hpp"
#include "ampcoh/coherence.hpp"
#include "ampcoh/errors.hpp"
#include "ampcoh/grover_engine.hpp"
#include "ampcoh/random.hpp"
#include "ampcoh/scenarios.hpp"
#include "ampcoh/state_core.hpp"
