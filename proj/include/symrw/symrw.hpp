#pragma once

#include "symrw/analysis.hpp"
#include "symrw/dataset.hpp"
#include "symrw/digest.hpp"
#include "symrw/errors.hpp"
#include "symrw/example.hpp"
#include "symrw/generator.hpp"
#include "symrw/io.hpp"
#include "symrw/polynomial.hpp"
#include "symrw/random.hpp"
#include "symrw/rewrite.hpp"
#include "symrw/term.hpp"
