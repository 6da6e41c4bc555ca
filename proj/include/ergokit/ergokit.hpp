#pragma once

#include "exactalg.hpp"
#include "symreal.hpp"
#include "rpoly.hpp"
#include "parse.hpp"
#include "structure.hpp"
#include "closedform.hpp"
#include "weyl.hpp"
#include "classify.hpp"
#include "serialize.hpp"
