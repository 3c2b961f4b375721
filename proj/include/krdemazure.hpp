#pragma once

// Umbrella header for the krdemazure library.

#include "krdemazure/rational.hpp"
#include "krdemazure/cartan.hpp"
#include "krdemazure/weyl.hpp"
#include "krdemazure/crystal.hpp"
#include "krdemazure/kr_type_a.hpp"
#include "krdemazure/highest_weight.hpp"
#include "krdemazure/characters.hpp"
#include "krdemazure/energy.hpp"
#include "krdemazure/verifier.hpp"
#include "krdemazure/suites.hpp"
