#pragma once
// Umbrella header.

#include "superharm/scalar.hpp"
#include "superharm/special.hpp"
#include "superharm/grassmann.hpp"
#include "superharm/superpoly.hpp"
#include "superharm/serialize.hpp"
#include "superharm/random.hpp"
#include "superharm/profile.hpp"
#include "superharm/quadrature.hpp"
#include "superharm/integrate.hpp"
#include "superharm/radial.hpp"
#include "superharm/harmonics.hpp"
#include "superharm/zonal.hpp"
#include "superharm/schrodinger.hpp"
#include "superharm/verify.hpp"
