#pragma once

// Umbrella header.

#include <schizo/baseconv.hpp>
#include <schizo/blocks.hpp>
#include <schizo/error.hpp>
#include <schizo/expansion.hpp>
#include <schizo/numeric.hpp>
#include <schizo/recurrence.hpp>
#include <schizo/taylor.hpp>
