#pragma once

#include "carleson.hpp"
#include "errors.hpp"
#include "experiment/config.hpp"
#include "experiment/report.hpp"
#include "experiment/run.hpp"
#include "frame.hpp"
#include "gram.hpp"
#include "kernels.hpp"
#include "quadrature.hpp"
#include "seqgen.hpp"
#include "spaces.hpp"
#include "subordination.hpp"
