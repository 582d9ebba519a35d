#pragma once

// Umbrella header for the univalent toolkit.

#include "univalent/error.hpp"
#include "univalent/series.hpp"
#include "univalent/catalog.hpp"
#include "univalent/schwarz.hpp"
#include "univalent/operator_d.hpp"
#include "univalent/certifier.hpp"
#include "univalent/radius.hpp"
