#pragma once

#include "assignment.hpp"
#include "detect.hpp"
#include "point_set.hpp"
#include "random.hpp"
#include "rankmap.hpp"
#include "report.hpp"
#include "sequence.hpp"
#include "series.hpp"
#include "simulate.hpp"
#include "statistic.hpp"
