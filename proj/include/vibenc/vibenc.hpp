#ifndef VIBENC_VIBENC_HPP
#define VIBENC_VIBENC_HPP

// Umbrella header: the whole library in one include.

#include "vibenc/core.hpp"
#include "vibenc/dense.hpp"
#include "vibenc/encoding.hpp"
#include "vibenc/io.hpp"
#include "vibenc/ladder.hpp"
#include "vibenc/models.hpp"
#include "vibenc/pauli.hpp"
#include "vibenc/rational.hpp"
#include "vibenc/runner.hpp"
#include "vibenc/spectral.hpp"

#endif  // VIBENC_VIBENC_HPP
