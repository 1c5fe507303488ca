#pragma once

#include "ckcas/algebra.hpp"
#include "ckcas/casimirs.hpp"
#include "ckcas/catalog.hpp"
#include "ckcas/enveloping.hpp"
#include "ckcas/gelfand.hpp"
#include "ckcas/linalg.hpp"
#include "ckcas/omega_spec.hpp"
#include "ckcas/polynomial.hpp"
#include "ckcas/rational.hpp"
#include "ckcas/render.hpp"
#include "ckcas/table.hpp"
#include "ckcas/wsymbols.hpp"
