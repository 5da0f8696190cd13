#pragma once

#include <streamtable/error.hpp>
#include <streamtable/rational.hpp>
#include <streamtable/table.hpp>
#include <streamtable/layout.hpp>
#include <streamtable/greedy.hpp>
#include <streamtable/height_opt.hpp>
#include <streamtable/model.hpp>
#include <streamtable/order_search.hpp>
#include <streamtable/reductions.hpp>
#include <streamtable/io.hpp>
#include <streamtable/svg.hpp>
