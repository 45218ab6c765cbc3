#pragma once

#include "swnlab/basespace.hpp"
#include "swnlab/config.hpp"
#include "swnlab/crosscheck.hpp"
#include "swnlab/distributions.hpp"
#include "swnlab/extfock.hpp"
#include "swnlab/fock.hpp"
#include "swnlab/jacobi.hpp"
#include "swnlab/meixner.hpp"
#include "swnlab/multiset.hpp"
#include "swnlab/parallel.hpp"
#include "swnlab/quadrature.hpp"
#include "swnlab/relations.hpp"
#include "swnlab/report.hpp"
#include "swnlab/special.hpp"
#include "swnlab/swn.hpp"
#include "swnlab/wick/coefficient.hpp"
#include "swnlab/wick/corpus.hpp"
#include "swnlab/wick/expression.hpp"
#include "swnlab/wick/parser.hpp"
