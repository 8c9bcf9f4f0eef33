// Umbrella header.
#pragma once

#include "dslit/config.hpp"
#include "dslit/csv.hpp"
#include "dslit/errors.hpp"
#include "dslit/fields.hpp"
#include "dslit/interference.hpp"
#include "dslit/oracle.hpp"
#include "dslit/packets.hpp"
#include "dslit/pipeline.hpp"
#include "dslit/quadrature.hpp"
#include "dslit/render.hpp"
#include "dslit/trajectories.hpp"
#include "dslit/validate.hpp"
