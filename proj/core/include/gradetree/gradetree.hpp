#pragma once

#include "gradetree/dataset.hpp"
#include "gradetree/error.hpp"
#include "gradetree/eval.hpp"
#include "gradetree/fixture.hpp"
#include "gradetree/metrics.hpp"
#include "gradetree/model_io.hpp"
#include "gradetree/rules.hpp"
#include "gradetree/tree.hpp"
#include "gradetree/verify.hpp"
