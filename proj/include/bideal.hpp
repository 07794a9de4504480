#pragma once

#include "bideal/error.hpp"
#include "bideal/ordinal.hpp"
#include "bideal/ideal.hpp"
#include "bideal/schema.hpp"
#include "bideal/classify.hpp"
#include "bideal/branch.hpp"
#include "bideal/query.hpp"
#include "bideal/scattered.hpp"
#include "bideal/oracle.hpp"
#include "bideal/generate.hpp"
#include "bideal/laws.hpp"
#include "bideal/emit.hpp"
