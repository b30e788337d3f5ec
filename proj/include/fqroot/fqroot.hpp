#pragma once

#include "fqroot/natural.hpp"
#include "fqroot/prime_field.hpp"
#include "fqroot/poly.hpp"
#include "fqroot/modcomp.hpp"
#include "fqroot/irreducible.hpp"
#include "fqroot/fq_field.hpp"
#include "fqroot/fq_poly.hpp"
#include "fqroot/roots.hpp"
#include "fqroot/dispatch.hpp"
#include "fqroot/bench.hpp"
#include "fqroot/selftest.hpp"
