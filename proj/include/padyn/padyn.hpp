#pragma once

#include "padyn/conjugation.hpp"
#include "padyn/dynamics/canonical_map.hpp"
#include "padyn/dynamics/classify.hpp"
#include "padyn/dynamics/evaluate.hpp"
#include "padyn/dynamics/norm_profile.hpp"
#include "padyn/dynamics/orbit.hpp"
#include "padyn/dynamics/spheres.hpp"
#include "padyn/ergodicity/haar.hpp"
#include "padyn/ergodicity/isometry.hpp"
#include "padyn/ergodicity/mod4.hpp"
#include "padyn/ergodicity/oracle.hpp"
#include "padyn/ergodicity/rho.hpp"
#include "padyn/ergodicity/theorem.hpp"
#include "padyn/error.hpp"
#include "padyn/padic/prime.hpp"
#include "padyn/padic/rational.hpp"
#include "padyn/padic/squares.hpp"
#include "padyn/padic/truncated.hpp"
#include "padyn/padic/valuation.hpp"
#include "padyn/periodic.hpp"
#include "padyn/polynomial.hpp"
