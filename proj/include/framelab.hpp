#pragma once

#include "framelab/bergman.hpp"
#include "framelab/campaign.hpp"
#include "framelab/constructions.hpp"
#include "framelab/criteria.hpp"
#include "framelab/eigen.hpp"
#include "framelab/error.hpp"
#include "framelab/frames.hpp"
#include "framelab/io.hpp"
#include "framelab/matrix.hpp"
#include "framelab/parallel.hpp"
#include "framelab/quadrature.hpp"
#include "framelab/random.hpp"
#include "framelab/spectral.hpp"
