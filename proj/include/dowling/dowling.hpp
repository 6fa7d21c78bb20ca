#ifndef DOWLING_DOWLING_HPP
#define DOWLING_DOWLING_HPP

#include "errors.hpp"
#include "rational.hpp"
#include "group.hpp"
#include "series.hpp"
#include "plethysm.hpp"
#include "wreath.hpp"
#include "poset.hpp"
#include "family.hpp"
#include "theorems.hpp"

#endif
