#pragma once

#include "ipdsaw/exactz.hpp"
#include "ipdsaw/largedev.hpp"
#include "ipdsaw/numeric.hpp"
#include "ipdsaw/polymer.hpp"
#include "ipdsaw/random.hpp"
#include "ipdsaw/steps.hpp"
#include "ipdsaw/wetting.hpp"
