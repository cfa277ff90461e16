#pragma once

#include "subldpc/channel.hpp"
#include "subldpc/code.hpp"
#include "subldpc/code_io.hpp"
#include "subldpc/decoder.hpp"
#include "subldpc/density_evolution.hpp"
#include "subldpc/errors.hpp"
#include "subldpc/experiment.hpp"
#include "subldpc/field.hpp"
#include "subldpc/matrix.hpp"
#include "subldpc/mc.hpp"
#include "subldpc/rng.hpp"
#include "subldpc/subspace.hpp"
