#pragma once

#include "sstkit/errors.hpp"
#include "sstkit/words.hpp"
#include "sstkit/verdict.hpp"
#include "sstkit/sst.hpp"
#include "sstkit/nfa.hpp"
#include "sstkit/product.hpp"
#include "sstkit/hdt0l.hpp"
#include "sstkit/integer.hpp"
#include "sstkit/matrix2.hpp"
#include "sstkit/poly.hpp"
#include "sstkit/groebner.hpp"
#include "sstkit/points.hpp"
#include "sstkit/algebraic.hpp"
#include "sstkit/reductions.hpp"
#include "sstkit/io.hpp"
#include "sstkit/report.hpp"
