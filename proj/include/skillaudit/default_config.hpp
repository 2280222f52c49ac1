#pragma once

namespace skillaudit {

// Built-in configuration document. Every scanner pattern, threshold, rubric
// criterion, scene override, and test-input bank ships here in the same
// key-value syntax accepted from --config files, so institutions can tune
// any of it without rebuilding. Regex values use ECMAScript syntax and are
// matched case-insensitively unless noted.
inline constexpr const char* kDefaultConfigText = R"cfg(
# ---------------------------------------------------------------- complexity
complexity.simple.max_refs = 1
complexity.simple.max_words = 800
complexity.simple.max_depth = 1
complexity.complex.min_refs = 5
complexity.complex.min_words = 3000
complexity.complex.min_depth = 5

# Conditional-instruction markers counted toward branching depth (one count
# per line per pattern).
branching.pattern = \bif\b
branching.pattern = \bwhen\b
branching.pattern = \botherwise\b
branching.pattern = \belse\b
branching.pattern = \bdepending on\b
branching.pattern = \bin case\b
branching.pattern = ^\s*\d+[.)].*\bor\b

# ---------------------------------------------------------------- discovery
# extension:dialect pairs for script classification
scripts.extension = .py:python
scripts.extension = .sh:shell
scripts.extension = .bash:shell
scripts.extension = .r:r
scripts.extension = .js:javascript
scripts.extension = .rb:ruby
scripts.extension = .pl:perl
# shebang-substring:dialect pairs, applied to extensionless executables
scripts.shebang = python:python
scripts.shebang = sh:shell
scripts.shebang = Rscript:r
scripts.shebang = node:javascript

# frontmatter keys whose values declare external endpoints / credentials
api.endpoint_key = api_endpoints
api.credential_key = api_credentials

# dependency manifest file names (anywhere under the skill root)
deps.manifest_name = requirements.txt
deps.manifest_name = requirements-dev.txt

# ---------------------------------------------------------------- veto gate 1
t1.crash_rate_threshold = 0.20

t3.rng_pattern = \brandom\.(random|randint|randrange|choice|choices|shuffle|sample|uniform|gauss|normalvariate)\s*\(
t3.rng_pattern = \b(np|numpy)\.random\.(?!seed|default_rng)\w+\s*\(
t3.rng_pattern = \bsecrets\.(token_hex|token_bytes|randbelow)\s*\(
t3.rng_pattern = \buuid\.uuid4\s*\(
t3.rng_pattern = \bdatetime\.now\s*\(
t3.rng_pattern = \btime\.time\s*\(
t3.rng_pattern = \$RANDOM
t3.rng_pattern = \b(runif|rnorm|rbinom)\s*\(
t3.seed_pattern = \brandom\.seed\s*\(
t3.seed_pattern = \b(np|numpy)\.random\.seed\s*\(
t3.seed_pattern = \bdefault_rng\s*\(\s*\d
t3.seed_pattern = \bRandom\s*\(\s*\d+\s*\)
t3.seed_pattern = \bset\.seed\s*\(
t3.seed_pattern = SKILLAUDIT_FIXED_CLOCK

t4.eval_pattern = (^|[^\w.])(eval|exec)\s*\(
t4.eval_pattern = \bos\.system\s*\(
t4.eval_pattern = \bsubprocess\.(call|run|Popen)\s*\(.*shell\s*=\s*True
t4.injection_pattern = ignore (all )?(previous|prior) instructions
t4.injection_pattern = disregard (the |your )?(system prompt|previous instructions|prior instructions)
t4.injection_pattern = exfiltrat
t4.injection_pattern = reveal (your )?(system prompt|hidden instructions)
t4.injection_pattern = send (the |your )?(credentials|api key|token) to

gates.evidence_excerpt_chars = 200

# ---------------------------------------------------------------- veto gate 2
m1.identifier_pattern = \b10\.\d+/\S+
m1.identifier_pattern = \bdoi:\s*\S+
m1.identifier_pattern = \bPMID:?\s*\d+
m1.doi_valid_pattern = ^10\.\d{4,9}/[-._;()/:a-z0-9]+$
m1.pmid_valid_pattern = ^pmid:\d{1,8}$
m1.pvalue_pattern = \bp\s*[=<>]\s*-?\d+(\.\d+)?
m1.sample_phrase_pattern = sample size (of |was |is |: ?)?(\d+)
m1.sample_symbol_pattern = \bn\s*=\s*(\d+)

m2.diagnostic_pattern = \bthe patient (has|is suffering from|must)\b
m2.diagnostic_pattern = \bdefinitive diagnosis\b
m2.diagnostic_pattern = \b(the )?diagnosis is\b
m2.diagnostic_pattern = \bis diagnostic of\b
m2.diagnostic_pattern = \byou should (take|start|stop) \w+ (mg|daily|twice)
m2.disclaimer_pattern = not (intended as |a substitute for )?medical advice
m2.disclaimer_pattern = research (purposes|use) only
m2.disclaimer_pattern = consult (a|your) (qualified )?(physician|clinician|doctor|healthcare)
m2.require_disclaimer.1 = true
m2.require_disclaimer.2 = true
m2.require_disclaimer.3 = true
m2.require_disclaimer.4 = true
m2.require_disclaimer.5 = false

m3.causal_pattern = \b(causes|caused|leads to|led to|results in|proves that|is the cause of)\b
m3.hedge_pattern = \b(may|might|could|possibly|potentially|suggests?|hypothesi)\w*\b
m3.correlational_pattern = \b(correlat\w+|associat\w+|linked (to|with))\b

m4.stdlib_module = json
m4.stdlib_module = sys
m4.stdlib_module = os
m4.stdlib_module = re
m4.stdlib_module = math
m4.stdlib_module = csv
m4.stdlib_module = statistics
m4.stdlib_module = collections
m4.stdlib_module = itertools
m4.stdlib_module = pathlib
m4.stdlib_module = argparse
m4.stdlib_module = datetime
m4.stdlib_module = random

# ---------------------------------------------------------------- sandbox
sandbox.wall_clock_seconds = 120
sandbox.output_cap_bytes = 536870912
sandbox.interpreter.python = python3
sandbox.interpreter.shell = /bin/sh
sandbox.interpreter.r = Rscript
sandbox.interpreter.javascript = node
sandbox.interpreter.ruby = ruby
sandbox.interpreter.perl = perl

batch.workers = 4

# ---------------------------------------------------------------- judge
judge.remote.endpoint = http://127.0.0.1:8666/judge
judge.remote.credential_env = SKILLAUDIT_JUDGE_TOKEN
judge.remote.timeout_seconds = 30
judge.remote.max_in_flight = 4

# ---------------------------------------------------------------- scoring
scoring.static_weight = 0.4
scoring.dynamic_weight = 0.6
scoring.threshold.production_ready = 85
scoring.threshold.limited_release = 75
scoring.threshold.beta_only = 60
guidance.deficit_fraction = 0.5

# ---------------------------------------------------------------- statistics
stats.wilcoxon_exact_max_n = 12
stats.delta_hist_bin_width = 5

# ---------------------------------------------------------------- static rubric
# 25 criteria over the 8 quality dimensions; equal weights by default.
rubric.static.ids = 1.1,1.2,1.3,1.4,2.1,2.2,2.3,3.1,3.2,3.3,4.1,4.2,4.3,5.1,5.2,5.3,6.1,6.2,6.3,7.1,7.2,7.3,8.1,8.2,8.3

rubric.static.1.1.name = Purpose clarity
rubric.static.1.1.dimension = functional_suitability
rubric.static.1.1.weight = 1
rubric.static.1.1.predicate = description_min_words:8
rubric.static.1.1.guidance = Expand the description so the skill's purpose is unambiguous.

rubric.static.1.2.name = Declared interfaces
rubric.static.1.2.dimension = functional_suitability
rubric.static.1.2.weight = 1
rubric.static.1.2.predicate = declares_io
rubric.static.1.2.guidance = Declare the skill's inputs and outputs in the manifest frontmatter.

rubric.static.1.3.name = Instruction completeness
rubric.static.1.3.dimension = functional_suitability
rubric.static.1.3.weight = 1
rubric.static.1.3.predicate = body_min_words:40
rubric.static.1.3.guidance = Flesh out the execution instructions; the body is too thin to act on.

rubric.static.1.4.name = Scope definition
rubric.static.1.4.dimension = functional_suitability
rubric.static.1.4.weight = 1
rubric.static.1.4.predicate = body_contains_any:scope|use case|intended|purpose
rubric.static.1.4.guidance = State the intended use cases and the boundaries of the skill.

rubric.static.2.1.name = Fault tolerance
rubric.static.2.1.dimension = reliability
rubric.static.2.1.weight = 1
rubric.static.2.1.predicate = graceful_degradation
rubric.static.2.1.guidance = Handle invalid inputs without aborting; degrade gracefully with partial results.

rubric.static.2.2.name = Determinism practices
rubric.static.2.2.dimension = reliability
rubric.static.2.2.weight = 1
rubric.static.2.2.predicate = rng_discipline
rubric.static.2.2.guidance = Seed every random source so repeated runs reproduce their outputs.

rubric.static.2.3.name = Recoverability
rubric.static.2.3.dimension = reliability
rubric.static.2.3.weight = 1
rubric.static.2.3.predicate = inline_recovery_guidance
rubric.static.2.3.guidance = Emit human-readable recovery guidance when an operation fails.

rubric.static.3.1.name = Resource bounds declared
rubric.static.3.1.dimension = performance_efficiency
rubric.static.3.1.weight = 1
rubric.static.3.1.predicate = declares_resource_bounds
rubric.static.3.1.guidance = Declare expected runtime or resource limits in the manifest.

rubric.static.3.2.name = Description conciseness
rubric.static.3.2.dimension = performance_efficiency
rubric.static.3.2.weight = 1
rubric.static.3.2.predicate = description_max_words:80
rubric.static.3.2.guidance = Tighten the description; keep the summary under 80 words.

rubric.static.3.3.name = Bounded iteration
rubric.static.3.3.dimension = performance_efficiency
rubric.static.3.3.weight = 1
rubric.static.3.3.predicate = bounded_loops
rubric.static.3.3.guidance = Give every loop a detectable exit bound.

rubric.static.4.1.name = Dependency pinning
rubric.static.4.1.dimension = compatibility
rubric.static.4.1.weight = 1
rubric.static.4.1.predicate = deps_pinned
rubric.static.4.1.guidance = Pin dependency versions in the bundled requirements manifest.

rubric.static.4.2.name = Platform neutrality
rubric.static.4.2.dimension = compatibility
rubric.static.4.2.weight = 1
rubric.static.4.2.predicate = platform_neutral
rubric.static.4.2.guidance = Remove OS-specific shell invocations from scripts and instructions.

rubric.static.4.3.name = Data format standards
rubric.static.4.3.dimension = compatibility
rubric.static.4.3.weight = 1
rubric.static.4.3.predicate = output_types_known
rubric.static.4.3.guidance = Declare output fields with standard format types (text, csv, json, md).

rubric.static.5.1.name = Guidance quality
rubric.static.5.1.dimension = usability
rubric.static.5.1.weight = 1
rubric.static.5.1.predicate = body_contains_any:example|usage|how to|step
rubric.static.5.1.guidance = Add usage guidance or a worked example to the instructions.

rubric.static.5.2.name = Forgiveness
rubric.static.5.2.dimension = usability
rubric.static.5.2.weight = 1
rubric.static.5.2.predicate = auto_correction
rubric.static.5.2.guidance = Auto-correct or disambiguate slightly malformed user inputs where safe.

rubric.static.5.3.name = Example provision
rubric.static.5.3.dimension = usability
rubric.static.5.3.weight = 1
rubric.static.5.3.predicate = has_example_block
rubric.static.5.3.guidance = Provide at least one concrete input/output example.

rubric.static.6.1.name = No dynamic evaluation
rubric.static.6.1.dimension = security
rubric.static.6.1.weight = 1
rubric.static.6.1.predicate = no_dynamic_eval
rubric.static.6.1.guidance = Remove eval/exec-style dynamic code execution from scripts.

rubric.static.6.2.name = Credential hygiene
rubric.static.6.2.dimension = security
rubric.static.6.2.weight = 1
rubric.static.6.2.predicate = no_hardcoded_credentials
rubric.static.6.2.guidance = Move credentials to environment variables; never hardcode keys.

rubric.static.6.3.name = Injection resistance
rubric.static.6.3.dimension = security
rubric.static.6.3.weight = 1
rubric.static.6.3.predicate = injection_free
rubric.static.6.3.guidance = Remove instruction-override phrasing from the manifest body.

rubric.static.7.1.name = Modular layout
rubric.static.7.1.dimension = maintainability
rubric.static.7.1.weight = 1
rubric.static.7.1.predicate = scripts_in_subdir
rubric.static.7.1.guidance = Keep executable scripts under a scripts/ subdirectory.

rubric.static.7.2.name = Documented scripts
rubric.static.7.2.dimension = maintainability
rubric.static.7.2.weight = 1
rubric.static.7.2.predicate = scripts_commented
rubric.static.7.2.guidance = Add header comments to each bundled script describing what it does.

rubric.static.7.3.name = Versioning metadata
rubric.static.7.3.dimension = maintainability
rubric.static.7.3.weight = 1
rubric.static.7.3.predicate = manifest_has_key:version
rubric.static.7.3.guidance = Add a version field to the manifest frontmatter.

rubric.static.8.1.name = Relative paths
rubric.static.8.1.dimension = portability
rubric.static.8.1.weight = 1
rubric.static.8.1.predicate = no_absolute_paths
rubric.static.8.1.guidance = Replace absolute filesystem paths with paths relative to the skill root.

rubric.static.8.2.name = Environment independence
rubric.static.8.2.dimension = portability
rubric.static.8.2.weight = 1
rubric.static.8.2.predicate = no_env_specific_refs
rubric.static.8.2.guidance = Remove references to user-specific home directories or machines.

rubric.static.8.3.name = Install instructions
rubric.static.8.3.dimension = portability
rubric.static.8.3.weight = 1
rubric.static.8.3.predicate = install_instructions_present
rubric.static.8.3.guidance = Document how to install the skill's dependencies.

# ---------------------------------------------------------------- layer 1 (40 pts)
rubric.layer1.ids = functional_correctness,output_reliability,efficiency,scope_adherence

rubric.layer1.functional_correctness.name = Functional correctness
rubric.layer1.functional_correctness.max = 10
rubric.layer1.functional_correctness.predicate = transcript_min_words:1
rubric.layer1.functional_correctness.guidance = The run produced no usable output; make the skill emit its result.

rubric.layer1.output_reliability.name = Reliability
rubric.layer1.output_reliability.max = 10
rubric.layer1.output_reliability.predicate = no_crash
rubric.layer1.output_reliability.guidance = The run crashed or timed out; stabilize execution.

rubric.layer1.efficiency.name = Efficiency
rubric.layer1.efficiency.max = 10
rubric.layer1.efficiency.predicate = transcript_word_limit:2000
rubric.layer1.efficiency.guidance = Output is excessively long; trim redundancy.

rubric.layer1.scope_adherence.name = Scope adherence
rubric.layer1.scope_adherence.max = 10
rubric.layer1.scope_adherence.predicate = mentions_declared_output
rubric.layer1.scope_adherence.guidance = Output does not cover the declared output fields.

# ---------------------------------------------------------------- layer 2 (60 pts per category)
rubric.layer2.1.ids = search_strategy_rigor,source_attribution,synthesis_coverage
rubric.layer2.1.search_strategy_rigor.name = Search strategy rigor
rubric.layer2.1.search_strategy_rigor.max = 20
rubric.layer2.1.search_strategy_rigor.predicate = contains_any:search strategy|query|database|pubmed|inclusion criteria
rubric.layer2.1.search_strategy_rigor.guidance = Describe the literature search strategy explicitly.
rubric.layer2.1.source_attribution.name = Source attribution
rubric.layer2.1.source_attribution.max = 20
rubric.layer2.1.source_attribution.predicate = has_citation_marker
rubric.layer2.1.source_attribution.guidance = Attribute claims to identifiable sources (DOI or PMID).
rubric.layer2.1.synthesis_coverage.name = Synthesis coverage
rubric.layer2.1.synthesis_coverage.max = 20
rubric.layer2.1.synthesis_coverage.predicate = has_section_headers
rubric.layer2.1.synthesis_coverage.guidance = Structure the synthesis into sections covering the evidence.

rubric.layer2.2.ids = design_soundness,evidence_hierarchy,validation_planning
rubric.layer2.2.design_soundness.name = Design soundness
rubric.layer2.2.design_soundness.max = 20
rubric.layer2.2.design_soundness.predicate = contains_any:sample size|power|randomization|endpoint
rubric.layer2.2.design_soundness.guidance = Address sample size, power, or randomization in the design.
rubric.layer2.2.evidence_hierarchy.name = Evidence hierarchy matching
rubric.layer2.2.evidence_hierarchy.max = 20
rubric.layer2.2.evidence_hierarchy.predicate = contains_any:evidence level|hierarchy|grade|systematic review
rubric.layer2.2.evidence_hierarchy.guidance = Match recommendations to the strength of the underlying evidence.
rubric.layer2.2.validation_planning.name = Validation planning
rubric.layer2.2.validation_planning.max = 20
rubric.layer2.2.validation_planning.predicate = contains_any:validation|control group|blinding|bias
rubric.layer2.2.validation_planning.guidance = Plan validation procedures and bias controls.

rubric.layer2.3.ids = code_executability,methodological_correctness,result_reporting
rubric.layer2.3.code_executability.name = Code executability
rubric.layer2.3.code_executability.max = 20
rubric.layer2.3.code_executability.predicate = generated_code_clean
rubric.layer2.3.code_executability.guidance = Generated code must parse and import only declared dependencies.
rubric.layer2.3.methodological_correctness.name = Methodological correctness
rubric.layer2.3.methodological_correctness.max = 20
rubric.layer2.3.methodological_correctness.predicate = contains_any:normalization|statistical test|correction|threshold
rubric.layer2.3.methodological_correctness.guidance = Name the statistical methods and corrections applied.
rubric.layer2.3.result_reporting.name = Result reporting
rubric.layer2.3.result_reporting.max = 20
rubric.layer2.3.result_reporting.predicate = contains_any:table|summary|results|figure
rubric.layer2.3.result_reporting.guidance = Report results in a structured summary or table.

rubric.layer2.4.ids = terminology_precision,section_completeness,academic_tone
rubric.layer2.4.terminology_precision.name = Terminology precision
rubric.layer2.4.terminology_precision.max = 20
rubric.layer2.4.terminology_precision.predicate = not_contains_any:lorem ipsum|placeholder|tbd|fixme
rubric.layer2.4.terminology_precision.guidance = Replace placeholder text with precise domain terminology.
rubric.layer2.4.section_completeness.name = Section completeness
rubric.layer2.4.section_completeness.max = 20
rubric.layer2.4.section_completeness.predicate = has_section_headers
rubric.layer2.4.section_completeness.guidance = Generate every required manuscript section.
rubric.layer2.4.academic_tone.name = Academic tone
rubric.layer2.4.academic_tone.max = 20
rubric.layer2.4.academic_tone.predicate = not_contains_any:!!!|awesome|amazing|super cool
rubric.layer2.4.academic_tone.guidance = Keep the register formal and professionally hedged.

rubric.layer2.5.ids = task_completion,mode_awareness,output_utility
rubric.layer2.5.task_completion.name = Task completion
rubric.layer2.5.task_completion.max = 20
rubric.layer2.5.task_completion.predicate = completed_without_crash
rubric.layer2.5.task_completion.guidance = Complete the requested task end to end.
rubric.layer2.5.mode_awareness.name = Mode awareness
rubric.layer2.5.mode_awareness.max = 20
rubric.layer2.5.mode_awareness.predicate = structured_output
rubric.layer2.5.mode_awareness.guidance = Emit structured output suitable for the execution context.
rubric.layer2.5.output_utility.name = Output utility
rubric.layer2.5.output_utility.max = 20
rubric.layer2.5.output_utility.predicate = transcript_min_words:20
rubric.layer2.5.output_utility.guidance = Produce substantive output, not a stub acknowledgement.

# ---------------------------------------------------------------- scene overrides (v1.1.0)
override.v1_1_0.ids = c2_fault,c2_forgive,c2_recover,c3_fault,c3_forgive,c3_recover,c5_mode_note

override.v1_1_0.c2_fault.category = 2
override.v1_1_0.c2_fault.criterion = 2.1
override.v1_1_0.c2_fault.predicate = strict_input_validation
override.v1_1_0.c2_fault.guidance = Halting at the source of a malformed input is correct defensive behavior; silent continuation corrupts downstream analysis.

override.v1_1_0.c2_forgive.category = 2
override.v1_1_0.c2_forgive.criterion = 5.2
override.v1_1_0.c2_forgive.predicate = no_fuzzy_autocorrection
override.v1_1_0.c2_forgive.guidance = Refuse fuzzy auto-correction of ambiguous parameters; request an exact value instead.

override.v1_1_0.c2_recover.category = 2
override.v1_1_0.c2_recover.criterion = 2.3
override.v1_1_0.c2_recover.predicate = machine_parseable_errors
override.v1_1_0.c2_recover.guidance = Emit structured machine-parseable error codes rather than terminal prose.

override.v1_1_0.c3_fault.category = 3
override.v1_1_0.c3_fault.criterion = 2.1
override.v1_1_0.c3_fault.predicate = strict_input_validation
override.v1_1_0.c3_fault.guidance = Halting at the source of a malformed sample identifier is correct defensive behavior; silent continuation corrupts downstream analysis.

override.v1_1_0.c3_forgive.category = 3
override.v1_1_0.c3_forgive.criterion = 5.2
override.v1_1_0.c3_forgive.predicate = no_fuzzy_autocorrection
override.v1_1_0.c3_forgive.guidance = Refuse fuzzy matching of parameter inputs; ambiguous values risk silently wrong results.

override.v1_1_0.c3_recover.category = 3
override.v1_1_0.c3_recover.criterion = 2.3
override.v1_1_0.c3_recover.predicate = machine_parseable_errors
override.v1_1_0.c3_recover.guidance = Emit structured machine-parseable error codes rather than terminal prose.

override.v1_1_0.c5_mode_note.category = 5
override.v1_1_0.c5_mode_note.mode = B,D
override.v1_1_0.c5_mode_note.annotation = Execution Mode Awareness: outputs are consumed by an agent-first pipeline; judge them as machine-facing artifacts.

# ---------------------------------------------------------------- input banks
bank.1.ids = q1,q2,q3,q4,q5,q6,q7,q8
bank.1.q1.prompt = Summarize the current randomized-trial evidence on statin therapy for primary cardiovascular prevention in adults over 60.
bank.1.q1.args = --topic statin-primary-prevention
bank.1.q2.prompt = Retrieve and appraise systematic reviews on intermittent fasting and glycemic control.
bank.1.q2.args = --topic fasting-glycemic-control
bank.1.q3.prompt = Synthesize the evidence on checkpoint-inhibitor adverse events in melanoma cohorts.
bank.1.q3.args = --topic checkpoint-adverse-events
bank.1.q4.prompt = Build an evidence table for antibiotic prophylaxis in colorectal surgery.
bank.1.q4.args = --topic antibiotic-prophylaxis
bank.1.q5.prompt = Appraise cohort studies linking air pollution exposure to asthma incidence.
bank.1.q5.args = --topic air-pollution-asthma
bank.1.q6.prompt = Summarize meta-analyses of mindfulness interventions for chronic pain.
bank.1.q6.args = --topic mindfulness-chronic-pain
bank.1.q7.prompt = Identify gaps in the literature on telehealth follow-up after stroke.
bank.1.q7.args = --topic telehealth-stroke
bank.1.q8.prompt = Appraise diagnostic-accuracy studies of rapid influenza antigen tests.
bank.1.q8.args = --topic influenza-rapid-tests

bank.2.ids = q1,q2,q3,q4,q5,q6,q7,q8
bank.2.q1.prompt = Draft a randomized controlled trial protocol comparing two dosing schedules of an antihypertensive.
bank.2.q1.args = --design rct-dosing
bank.2.q2.prompt = Design a case-control study of dietary factors in early-onset colorectal cancer.
bank.2.q2.args = --design case-control-diet
bank.2.q3.prompt = Plan the statistical analysis for a stepped-wedge cluster trial of hand-hygiene interventions.
bank.2.q3.args = --design stepped-wedge
bank.2.q4.prompt = Propose a crossover trial design for evaluating a sleep-aid compound with washout planning.
bank.2.q4.args = --design crossover-sleep
bank.2.q5.prompt = Design a prospective cohort to study biomarker trajectories before diabetes onset.
bank.2.q5.args = --design cohort-biomarker
bank.2.q6.prompt = Draft an adaptive phase II oncology trial design with interim futility stopping.
bank.2.q6.args = --design adaptive-phase2
bank.2.q7.prompt = Plan sample size and power for a non-inferiority trial of a generic inhaler.
bank.2.q7.args = --design noninferiority-inhaler
bank.2.q8.prompt = Design a diagnostic validation study for a sepsis early-warning score.
bank.2.q8.args = --design sepsis-validation

bank.3.ids = q1,q2,q3,q4,q5,q6,q7,q8
bank.3.q1.prompt = Normalize the supplied RNA-seq count matrix and report differentially expressed genes.
bank.3.q1.args = --input counts.csv
bank.3.q2.prompt = Run a survival analysis on the provided cohort table and summarize hazard ratios.
bank.3.q2.args = --input cohort.csv
bank.3.q3.prompt = Compute descriptive statistics and missingness rates for the attached clinical dataset.
bank.3.q3.args = --input clinical.csv
bank.3.q4.prompt = Perform multiple-testing correction on the supplied p-value list and report survivors.
bank.3.q4.args = --input pvalues.csv
bank.3.q5.prompt = Cluster the expression profiles and report cluster sizes with silhouette scores.
bank.3.q5.args = --input profiles.csv
bank.3.q6.prompt = Fit a logistic regression for readmission risk and report coefficients.
bank.3.q6.args = --input readmission.csv
bank.3.q7.prompt = Validate the sample identifiers in the manifest against the plate layout.
bank.3.q7.args = --input plate_layout.csv
bank.3.q8.prompt = Integrate two batches of proteomics measurements with batch-effect adjustment.
bank.3.q8.args = --input batches.csv

bank.4.ids = q1,q2,q3,q4,q5,q6,q7,q8
bank.4.q1.prompt = Draft the methods section for a cohort study of anticoagulant safety in atrial fibrillation.
bank.4.q1.args = --section methods
bank.4.q2.prompt = Write a structured abstract for a trial of pulmonary rehabilitation in COPD.
bank.4.q2.args = --section abstract
bank.4.q3.prompt = Draft the limitations paragraph for a retrospective chart-review study.
bank.4.q3.args = --section limitations
bank.4.q4.prompt = Compose a cover letter for submission of a nutrition epidemiology manuscript.
bank.4.q4.args = --section cover-letter
bank.4.q5.prompt = Draft the introduction for a paper on antimicrobial stewardship outcomes.
bank.4.q5.args = --section introduction
bank.4.q6.prompt = Write the discussion section contrasting findings with two prior trials.
bank.4.q6.args = --section discussion
bank.4.q7.prompt = Draft a response-to-reviewers document addressing three methodological critiques.
bank.4.q7.args = --section response
bank.4.q8.prompt = Produce a CONSORT-style participant-flow narrative for a randomized trial.
bank.4.q8.args = --section consort-flow

bank.5.ids = q1,q2,q3,q4,q5,q6,q7,q8
bank.5.q1.prompt = Convert the attached citation list from APA to Vancouver style.
bank.5.q1.args = --task citation-convert
bank.5.q2.prompt = Deduplicate the merged reference library export and report removals.
bank.5.q2.args = --task dedupe-references
bank.5.q3.prompt = Extract PICO elements from the supplied trial registration record.
bank.5.q3.args = --task pico-extract
bank.5.q4.prompt = Reformat the data dictionary into a publication-ready table.
bank.5.q4.args = --task dictionary-table
bank.5.q5.prompt = Generate a screening log template for a two-reviewer abstract screen.
bank.5.q5.args = --task screening-log
bank.5.q6.prompt = Check the manuscript reference numbering for gaps and duplicates.
bank.5.q6.args = --task refcheck
bank.5.q7.prompt = Produce a keyword list and MeSH mapping for an indexing submission.
bank.5.q7.args = --task mesh-map
bank.5.q8.prompt = Summarize version differences between two protocol documents.
bank.5.q8.args = --task protocol-diff
)cfg";

} // namespace skillaudit
