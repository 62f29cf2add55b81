#pragma once

// Exact-arithmetic toolkit for the (n,2,2) Bell scenario: deterministic
// strategies and the Bell polytope, Bell functionals and their standard
// form, the Hardy inequality and Hardy box, non-signaling boxes with
// extremality certification, and the facet/vertex duality between the two
// polytopes. Everything is computed over the rationals; every verdict is a
// checked certificate, never a numerical estimate.

#include "bits.hpp"
#include "box.hpp"
#include "document.hpp"
#include "duality.hpp"
#include "errors.hpp"
#include "functional.hpp"
#include "linalg.hpp"
#include "nonsignaling.hpp"
#include "polytope.hpp"
#include "rational.hpp"
#include "simplex.hpp"
