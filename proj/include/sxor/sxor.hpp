#pragma once

#include "sxor/analysis.hpp"
#include "sxor/codec.hpp"
#include "sxor/codes.hpp"
#include "sxor/error.hpp"
#include "sxor/gf2m.hpp"
#include "sxor/gf2poly.hpp"
#include "sxor/polymat.hpp"
#include "sxor/reference.hpp"
