#pragma once

// Umbrella header.

#include "lognarrator/config.hpp"
#include "lognarrator/csv.hpp"
#include "lognarrator/dot.hpp"
#include "lognarrator/duration_stats.hpp"
#include "lognarrator/errors.hpp"
#include "lognarrator/event_log.hpp"
#include "lognarrator/fuzzy.hpp"
#include "lognarrator/indicators.hpp"
#include "lognarrator/lifecycle.hpp"
#include "lognarrator/log_json.hpp"
#include "lognarrator/model.hpp"
#include "lognarrator/pipeline.hpp"
#include "lognarrator/protoforms.hpp"
#include "lognarrator/realize.hpp"
#include "lognarrator/summary_config.hpp"
#include "lognarrator/time_util.hpp"
#include "lognarrator/validate.hpp"
#include "lognarrator/variants.hpp"
#include "lognarrator/vocab.hpp"
#include "lognarrator/xes.hpp"
