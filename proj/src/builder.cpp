// SPDX-License-Identifier: Apache-2.0
#include "upsilon/builder.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace upsilon {

namespace {

Pattern nt(NonTerminal x) { return Pattern::nonterminal(x); }

const Pattern& term_nt() {
    static const Pattern p = nt(NonTerminal::T());
    return p;
}
const Pattern& subst_nt() {
    static const Pattern p = nt(NonTerminal::S());
    return p;
}
const Pattern& index_nt() {
    static const Pattern p = nt(NonTerminal::N());
    return p;
}

// Rules in the order their schemes contribute productions.
constexpr RuleTag kSchemeOrder[] = {RuleTag::App,      RuleTag::Lambda,   RuleTag::FVar,    RuleTag::RVar,
                                    RuleTag::FVarLift, RuleTag::RVarLift, RuleTag::VarShift};

[[noreturn]] void bad_match(RuleTag rule, Pattern m) {
    throw std::logic_error("unexpected " + std::string(to_string(rule)) + " match " + to_string(m));
}

struct Task {
    std::size_t template_slot;
    Pattern rhs;
    Pattern target;
};

// Intersections of every level production against each template, in
// production order. Work is spread over `jobs` engines; each result lands in
// its own slot so the order never depends on scheduling.
std::vector<std::vector<Pattern>> matchings(const ReductionGrammar& g, std::span<const Production> level,
                                            const std::vector<Template>& templates, const BuildOptions& options) {
    std::vector<Task> tasks;
    for (std::size_t slot = 0; slot < templates.size(); ++slot) {
        const Template& tmpl = templates[slot];
        for (const Production& p : level) {
            std::size_t w = closure_width(p.rhs);
            if (w >= tmpl.width) tasks.push_back({slot, p.rhs, padded(tmpl, w - tmpl.width)});
        }
    }

    std::vector<FipResult> results(tasks.size());
    const FipOptions fip_options{.t_shortcut = true, .precheck = false};
    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(tasks.size())));
    if (jobs <= 1) {
        FipEngine engine(g, fip_options);
        for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = engine.fip(tasks[i].rhs, tasks[i].target);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> workers;
        for (unsigned j = 0; j < jobs; ++j) {
            workers.emplace_back([&] {
                try {
                    FipEngine engine(g, fip_options);
                    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
                        results[i] = engine.fip(tasks[i].rhs, tasks[i].target);
                    }
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = tasks.size();
                }
            });
        }
        for (std::thread& w : workers) w.join();
        if (failure) std::rethrow_exception(failure);
    }

    std::vector<std::vector<Pattern>> out(templates.size());
    std::vector<std::unordered_set<Pattern>> seen(templates.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (options.fip_observer) options.fip_observer(tasks[i].rhs, tasks[i].target, results[i], g);
        const std::size_t slot = tasks[i].template_slot;
        for (Pattern m : results[i]) {
            if (seen[slot].insert(m).second) out[slot].push_back(m);
        }
    }
    return out;
}

// Rewrites one match into the right-hand sides of its predecessors.
void emit_scheme(RuleTag rule, Pattern match, std::size_t width, FipEngine& engine, const ReductionGrammar& g,
                 const BuildOptions& options, std::vector<Pattern>& out) {
    ClosureSplit split = closure_split(match);
    if (split.width() < width) bad_match(rule, match);
    std::span<const Pattern> tail(split.tail);
    const Pattern core = reassemble(split.head, tail.first(width));
    const auto outer = tail.subspan(width);
    auto wrap = [&](Pattern p) { out.push_back(reassemble(p, outer)); };
    using K = Pattern::Kind;

    switch (rule) {
    case RuleTag::App: {
        // a[s](b[s]) is the only reduct shape, so both closures must agree.
        if (core.kind() != K::App || core.child(0).kind() != K::Closure || core.child(1).kind() != K::Closure) {
            bad_match(rule, match);
        }
        const Pattern left = core.child(0), right = core.child(1);
        FipResult subs = engine.fip(left.child(1), right.child(1));
        if (options.fip_observer) options.fip_observer(left.child(1), right.child(1), subs, g);
        for (Pattern s : subs) wrap(Pattern::closure(Pattern::app(left.child(0), right.child(0)), s));
        return;
    }
    case RuleTag::Lambda: {
        if (core.kind() != K::Abs || core.child(0).kind() != K::Closure || core.child(0).child(1).kind() != K::Lift) {
            bad_match(rule, match);
        }
        const Pattern body = core.child(0);
        wrap(Pattern::closure(Pattern::abs(body.child(0)), body.child(1).child(0)));
        return;
    }
    case RuleTag::RVar:
        wrap(Pattern::closure(Pattern::succ(core), Pattern::slash(term_nt())));
        return;
    case RuleTag::FVarLift:
        if (core != Pattern::zero()) bad_match(rule, match);
        wrap(Pattern::closure(core, Pattern::lift(subst_nt())));
        return;
    case RuleTag::RVarLift: {
        if (core.kind() != K::Closure || core.child(1) != Pattern::shift() || core.child(0).kind() != K::Closure) {
            bad_match(rule, match);
        }
        const Pattern inner = core.child(0);
        wrap(Pattern::closure(Pattern::succ(inner.child(0)), Pattern::lift(inner.child(1))));
        return;
    }
    case RuleTag::VarShift:
        if (core.kind() != K::Succ) bad_match(rule, match);
        wrap(Pattern::closure(core.child(0), Pattern::shift()));
        return;
    case RuleTag::FVar: break;
    }
    bad_match(rule, match);
}

// 0[a/][s..] reduces to a[s..], so every way of cutting a level production
// chi[s1]..[sw] into a prefix and a tail gives a predecessor.
// The merged production 0[Gn/] is left to the caller.
void fvar_scheme(std::span<const Production> level, const BuildOptions& options, std::vector<Pattern>& out) {
    const Pattern zero = Pattern::zero();
    for (const Production& p : level) {
        ClosureSplit split = closure_split(p.rhs);
        std::span<const Pattern> tail(split.tail);
        const std::size_t last = options.fvar_merge ? split.width() : split.width() + 1;
        for (std::size_t d = 0; d < last; ++d) {
            Pattern prefix = reassemble(split.head, tail.first(d));
            out.push_back(reassemble(Pattern::closure(zero, Pattern::slash(prefix)), tail.subspan(d)));
        }
    }
}

Pattern merged_fvar(const ReductionGrammar& g) {
    return Pattern::closure(Pattern::zero(), Pattern::slash(nt(g.axiom())));
}

// Scheme output for a slice of the level productions, rule by rule.
std::vector<Pattern> schemes(const ReductionGrammar& g, std::span<const Production> level,
                             std::span<const RuleTag> rules, const BuildOptions& options, bool with_merged) {
    std::vector<Template> templates;
    for (RuleTag rule : rules) {
        if (rule != RuleTag::FVar) templates.push_back(template_for(rule));
    }
    std::vector<std::vector<Pattern>> matches = matchings(g, level, templates, options);

    FipEngine engine(g, FipOptions{.t_shortcut = true, .precheck = false});
    std::vector<Pattern> out;
    std::size_t slot = 0;
    for (RuleTag rule : rules) {
        if (rule == RuleTag::FVar) {
            if (with_merged && options.fvar_merge) out.push_back(merged_fvar(g));
            fvar_scheme(level, options, out);
            continue;
        }
        const Template& tmpl = templates[slot];
        for (Pattern m : matches[slot]) emit_scheme(rule, m, tmpl.width, engine, g, options, out);
        ++slot;
    }
    return out;
}

} // namespace

Template template_for(RuleTag rule) {
    const Pattern t = term_nt(), s = subst_nt(), n = index_nt();
    switch (rule) {
    case RuleTag::App: return {rule, Pattern::app(Pattern::closure(t, s), Pattern::closure(t, s)), 0};
    case RuleTag::Lambda: return {rule, Pattern::abs(Pattern::closure(t, Pattern::lift(s))), 0};
    case RuleTag::FVar: return {rule, t, 0};
    case RuleTag::RVar: return {rule, n, 0};
    case RuleTag::FVarLift: return {rule, Pattern::zero(), 0};
    case RuleTag::RVarLift: return {rule, Pattern::closure(Pattern::closure(n, s), Pattern::shift()), 2};
    case RuleTag::VarShift: return {rule, Pattern::succ(n), 0};
    }
    throw std::logic_error("unknown rule");
}

Pattern padded(const Template& t, std::size_t extra) {
    Pattern p = t.pattern;
    for (std::size_t i = 0; i < extra; ++i) p = Pattern::closure(p, subst_nt());
    return p;
}

ReductionGrammar seed() {
    ReductionGrammar g = ReductionGrammar::with_predefined(0);
    const Pattern g0 = nt(NonTerminal::G(0));
    g.add(NonTerminal::G(0), index_nt());
    g.add(NonTerminal::G(0), Pattern::abs(g0));
    g.add(NonTerminal::G(0), Pattern::app(g0, g0));
    return g;
}

std::vector<Pattern> phi_matchings(const ReductionGrammar& g, const Template& tmpl, const BuildOptions& options) {
    if (tmpl.rule == RuleTag::FVar) return {};
    return matchings(g, g.rules(g.axiom()), {tmpl}, options).front();
}

std::vector<Pattern> apply_scheme(RuleTag rule, const ReductionGrammar& g, const BuildOptions& options) {
    const RuleTag rules[] = {rule};
    return schemes(g, g.rules(g.axiom()), rules, options, true);
}

ReductionGrammar extend(const ReductionGrammar& g, const BuildOptions& options) {
    require_well_formed(g);
    const std::uint32_t next = g.level() + 1;
    const NonTerminal lhs = NonTerminal::G(next);
    ReductionGrammar out = g;
    out.set_level(next);
    out.add(lhs, Pattern::abs(nt(lhs)));
    for (std::uint32_t k = 0; k <= next; ++k) {
        out.add(lhs, Pattern::app(nt(NonTerminal::G(k)), nt(NonTerminal::G(next - k))));
    }
    for (Pattern rhs : schemes(g, g.rules(g.axiom()), kSchemeOrder, options, true)) out.add(lhs, rhs);
    require_well_formed(out);
    return out;
}

StreamSummary stream_extension(const ReductionGrammar& g, const std::function<void(Pattern)>& sink,
                               const BuildOptions& options, std::size_t batch) {
    require_well_formed(g);
    const std::uint32_t next = g.level() + 1;
    const NonTerminal lhs = NonTerminal::G(next);
    const PotentialTable potentials(g);
    StreamSummary summary;
    // A level's potential is one more than the largest regular rhs of that
    // level or any below it; start from the current axiom's.
    std::uint64_t regular_potential = potentials.of(g.axiom()) - 1;

    auto accept = [&](Pattern rhs) {
        const Production p{lhs, rhs};
        std::optional<std::string> why = simple_violation(p, next);
        if (!why) why = verbose_violation(p);
        if (why) throw InvariantViolation(to_string(p) + ": " + *why);
        if (!p.self_referencing()) regular_potential = std::max(regular_potential, potentials.of(rhs));
        ++summary.productions;
        sink(rhs);
    };

    // Patterns that must outlive the batch scopes are interned up front.
    for (RuleTag rule : kAllRules) template_for(rule);
    const Pattern self = nt(lhs);
    std::vector<Pattern> structural{Pattern::abs(self)};
    for (std::uint32_t k = 0; k <= next; ++k) structural.push_back(Pattern::app(nt(NonTerminal::G(k)), nt(NonTerminal::G(next - k))));
    for (Pattern rhs : structural) accept(rhs);
    if (options.fvar_merge) accept(merged_fvar(g));

    std::span<const Production> level = g.rules(g.axiom());
    batch = std::max<std::size_t>(batch, 1);
    for (std::size_t from = 0; from < level.size(); from += batch) {
        PatternScope scope;
        const std::size_t count = std::min(batch, level.size() - from);
        for (Pattern rhs : schemes(g, level.subspan(from, count), kSchemeOrder, options, false)) accept(rhs);
    }

    summary.potential = regular_potential + 1;
    for (Pattern rhs : structural) {
        if (!mentions(rhs, lhs)) continue;
        for (std::size_t i = 0; i < rhs.arity(); ++i) {
            const Pattern arg = rhs.child(i);
            const std::uint64_t value = arg == self ? summary.potential : potentials.of(arg);
            if (value > summary.potential) {
                throw InvariantViolation(to_string(Production{lhs, rhs}) + ": self-referencing production is not conservative");
            }
        }
    }
    return summary;
}

std::vector<ReductionGrammar> build_hierarchy(std::uint32_t max_level, const BuildOptions& options) {
    std::vector<ReductionGrammar> out;
    out.reserve(max_level + 1);
    out.push_back(seed());
    for (std::uint32_t k = 1; k <= max_level; ++k) out.push_back(extend(out.back(), options));
    return out;
}

} // namespace upsilon
