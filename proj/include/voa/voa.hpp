#pragma once

#include "voa/exact/rational.hpp"
#include "voa/exact/frac_index.hpp"
#include "voa/exact/cyclotomic.hpp"
#include "voa/exact/linear_algebra.hpp"
#include "voa/core/context.hpp"
#include "voa/core/residue.hpp"
#include "voa/twisted/twisted_fock.hpp"
#include "voa/zhu/zhu_algebra.hpp"
#include "voa/bimodule/bimodule.hpp"
#include "voa/verify/checks.hpp"
