#pragma once

#include "hbareff/bounds.hpp"
#include "hbareff/decoherence.hpp"
#include "hbareff/errors.hpp"
#include "hbareff/io.hpp"
#include "hbareff/moments.hpp"
#include "hbareff/oracle.hpp"
#include "hbareff/quadrature.hpp"
#include "hbareff/state.hpp"
#include "hbareff/thermal.hpp"
#include "hbareff/tunneling.hpp"
