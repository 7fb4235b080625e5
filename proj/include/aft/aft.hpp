#pragma once

#include "aft/encoders/autoepistemic.hpp"
#include "aft/encoders/logic_program.hpp"
#include "aft/encoders/wadf.hpp"
#include "aft/engine.hpp"
#include "aft/error.hpp"
#include "aft/fixpoint.hpp"
#include "aft/flower.hpp"
#include "aft/framework.hpp"
#include "aft/hierarchy.hpp"
#include "aft/interval.hpp"
#include "aft/io.hpp"
#include "aft/poset.hpp"
