#pragma once

// Umbrella header.

#include "palcolor/conflict.hpp"
#include "palcolor/core.hpp"
#include "palcolor/driver.hpp"
#include "palcolor/generate.hpp"
#include "palcolor/graph.hpp"
#include "palcolor/greedy.hpp"
#include "palcolor/io.hpp"
#include "palcolor/list_coloring.hpp"
#include "palcolor/ordering.hpp"
#include "palcolor/palette.hpp"
#include "palcolor/pauli.hpp"
#include "palcolor/tuner.hpp"
#include "palcolor/validator.hpp"
