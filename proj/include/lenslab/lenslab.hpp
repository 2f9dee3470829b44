#pragma once

#include "lenslab/errors.hpp"
#include "lenslab/fincat.hpp"
#include "lenslab/functor.hpp"
#include "lenslab/pullback.hpp"
#include "lenslab/lens.hpp"
#include "lenslab/opfibration.hpp"
#include "lenslab/diagram.hpp"
#include "lenslab/free_product.hpp"
#include "lenslab/squares.hpp"
#include "lenslab/spans.hpp"
#include "lenslab/comparison.hpp"
#include "lenslab/gen.hpp"
#include "lenslab/format.hpp"
#include "lenslab/cli.hpp"
