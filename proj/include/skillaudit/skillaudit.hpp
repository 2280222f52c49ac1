#pragma once

// Umbrella header: the audit pipeline, the reliability-study harness, and
// the fixture generator. Individual headers stay includable on their own.

#include "skillaudit/artifact.hpp"
#include "skillaudit/config.hpp"
#include "skillaudit/consensus.hpp"
#include "skillaudit/corpus.hpp"
#include "skillaudit/dependency.hpp"
#include "skillaudit/errors.hpp"
#include "skillaudit/execution.hpp"
#include "skillaudit/harness.hpp"
#include "skillaudit/judge.hpp"
#include "skillaudit/judge_remote.hpp"
#include "skillaudit/pipeline.hpp"
#include "skillaudit/report.hpp"
#include "skillaudit/research_gate.hpp"
#include "skillaudit/rubric.hpp"
#include "skillaudit/scorecards.hpp"
#include "skillaudit/scoring.hpp"
#include "skillaudit/static_gate.hpp"
#include "skillaudit/stats.hpp"
#include "skillaudit/study.hpp"
#include "skillaudit/veto.hpp"
