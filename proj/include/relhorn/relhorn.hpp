#pragma once

#include "relhorn/closure.hpp"
#include "relhorn/convexity.hpp"
#include "relhorn/error.hpp"
#include "relhorn/families.hpp"
#include "relhorn/formula.hpp"
#include "relhorn/json_io.hpp"
#include "relhorn/limits.hpp"
#include "relhorn/quantale.hpp"
#include "relhorn/schema.hpp"
#include "relhorn/semantics.hpp"
#include "relhorn/signature.hpp"
#include "relhorn/structure.hpp"
#include "relhorn/theory.hpp"
#include "relhorn/vgraph.hpp"
