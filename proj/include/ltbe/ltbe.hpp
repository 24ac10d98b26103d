#pragma once

#include "ltbe/branching.hpp"
#include "ltbe/engine.hpp"
#include "ltbe/error.hpp"
#include "ltbe/lifting.hpp"
#include "ltbe/monad_laws.hpp"
#include "ltbe/oracle.hpp"
#include "ltbe/polyfunctor.hpp"
#include "ltbe/relation.hpp"
#include "ltbe/semiring.hpp"
#include "ltbe/system.hpp"
#include "ltbe/term.hpp"
