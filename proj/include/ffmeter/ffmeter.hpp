#pragma once

#include "ffmeter/field.hpp"
#include "ffmeter/poly.hpp"
#include "ffmeter/linalg.hpp"
#include "ffmeter/measures.hpp"
#include "ffmeter/families.hpp"
#include "ffmeter/bounds.hpp"
#include "ffmeter/sweep.hpp"
#include "ffmeter/io.hpp"
