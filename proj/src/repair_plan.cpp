#include "pbkc/repair_plan.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "pbkc/error.hpp"

namespace pbkc {

namespace {

bool in_range(const RepairPlan& p, Cell c) {
    return c.row >= 0 && c.row < p.n && c.col >= 0 && c.col < p.m;
}

void collect_refs(const Step& step, std::vector<Cell>& cells, std::vector<std::pair<int, int>>& temp_uses,
                  std::vector<int>& temp_defs, int step_idx) {
    auto use = [&](const Src& s) {
        if (s.kind == Src::Kind::CellRef)
            cells.push_back(s.cell);
        else
            temp_uses.emplace_back(step_idx, s.temp);
    };
    if (const auto* d = std::get_if<DecodeColumnStep>(&step)) {
        for (const auto& [row, src] : d->inputs) {
            (void)row;
            use(src);
        }
        for (int i = 0; i < d->out_count; ++i) temp_defs.push_back(d->out_base + i);
    } else if (const auto* l = std::get_if<LinCombStep>(&step)) {
        for (const auto& [coeff, src] : l->terms) {
            (void)coeff;
            use(src);
        }
        temp_defs.push_back(l->out);
    } else if (const auto* s = std::get_if<PairSolveStep>(&step)) {
        use(s->high);
        use(s->low);
        temp_defs.push_back(s->out_a);
        temp_defs.push_back(s->out_b);
    }
}

} // namespace

void validate_plan(const RepairPlan& plan) {
    require(plan.failed >= 0 && plan.failed < plan.n, Errc::ProgramFault, "plan: failed node out of range");
    for (Cell c : plan.reads) {
        require(in_range(plan, c), Errc::ProgramFault, "plan: read outside stripe");
        require(c.row != plan.failed, Errc::ProgramFault, "plan: read from failed node");
    }
    require(std::is_sorted(plan.reads.begin(), plan.reads.end()), Errc::ProgramFault, "plan: reads not sorted");
    require(std::adjacent_find(plan.reads.begin(), plan.reads.end()) == plan.reads.end(), Errc::ProgramFault,
            "plan: duplicate read");

    std::vector<Cell> referenced;
    std::vector<char> defined(static_cast<size_t>(plan.temps), 0);
    for (size_t i = 0; i < plan.program.size(); ++i) {
        std::vector<std::pair<int, int>> temp_uses;
        std::vector<int> temp_defs;
        collect_refs(plan.program[i], referenced, temp_uses, temp_defs, static_cast<int>(i));
        for (auto [step, t] : temp_uses) {
            (void)step;
            require(t >= 0 && t < plan.temps && defined[static_cast<size_t>(t)], Errc::ProgramFault,
                    "plan: temp used before definition");
        }
        for (int t : temp_defs) {
            require(t >= 0 && t < plan.temps, Errc::ProgramFault, "plan: temp index out of range");
            require(!defined[static_cast<size_t>(t)], Errc::ProgramFault, "plan: temp redefined");
            defined[static_cast<size_t>(t)] = 1;
        }
    }
    require(static_cast<int>(plan.outputs.size()) == plan.m, Errc::ProgramFault, "plan: outputs != m");
    for (const Src& s : plan.outputs) {
        if (s.kind == Src::Kind::CellRef)
            referenced.push_back(s.cell);
        else
            require(s.temp >= 0 && s.temp < plan.temps && defined[static_cast<size_t>(s.temp)], Errc::ProgramFault,
                    "plan: output temp undefined");
    }
    std::sort(referenced.begin(), referenced.end());
    referenced.erase(std::unique(referenced.begin(), referenced.end()), referenced.end());
    // Bandwidth honesty: the program must consume the whole read set and
    // nothing else.
    require(referenced == plan.reads, Errc::ProgramFault, "plan: program references != read set");
}

namespace {

class Runner {
  public:
    Runner(const BaseCode& base, const RepairPlan& plan, const CellProvider& fetch)
        : base_(base), plan_(plan), fetch_(fetch), temps_(static_cast<size_t>(plan.temps), 0),
          have_(static_cast<size_t>(plan.n) * plan.m, 0), value_(static_cast<size_t>(plan.n) * plan.m, 0) {}

    std::vector<Symbol> run() {
        for (const Step& s : plan_.program) std::visit([&](const auto& st) { exec(st); }, s);
        std::vector<Symbol> out;
        out.reserve(static_cast<size_t>(plan_.m));
        for (const Src& s : plan_.outputs) out.push_back(value_of(s));
        // Every planned cell must have been pulled exactly through the program.
        require(static_cast<int>(touched_.size()) == plan_.bandwidth(), Errc::ProgramFault,
                "plan: execution did not consume the full read set");
        return out;
    }

  private:
    Symbol cell_value(Cell c) {
        size_t idx = static_cast<size_t>(c.row) * plan_.m + c.col;
        if (!have_[idx]) {
            if (!std::binary_search(plan_.reads.begin(), plan_.reads.end(), c))
                fail(Errc::ProgramFault, "plan: access outside read set");
            auto v = fetch_(c);
            require(v.has_value(), Errc::MissingCell, "plan: planned cell unavailable");
            value_[idx] = *v;
            have_[idx] = 1;
            touched_.push_back(c);
        }
        return value_[idx];
    }

    Symbol value_of(const Src& s) {
        if (s.kind == Src::Kind::CellRef) return cell_value(s.cell);
        return temps_[static_cast<size_t>(s.temp)];
    }

    void exec(const DecodeColumnStep& st) {
        std::vector<std::pair<int, Symbol>> rows;
        rows.reserve(st.inputs.size());
        for (const auto& [base_row, src] : st.inputs) rows.emplace_back(base_row, value_of(src));
        auto data = base_.decode_any_k(rows);
        require(static_cast<int>(data.size()) == st.out_count, Errc::ProgramFault, "plan: decode width mismatch");
        for (int i = 0; i < st.out_count; ++i) temps_[static_cast<size_t>(st.out_base + i)] = data[static_cast<size_t>(i)];
    }

    void exec(const LinCombStep& st) {
        Symbol acc = 0;
        for (const auto& [coeff, src] : st.terms) acc = gf::add(acc, gf::mul(coeff, value_of(src)));
        temps_[static_cast<size_t>(st.out)] = acc;
    }

    void exec(const PairSolveStep& st) {
        require(st.theta != 1 && st.theta != 0, Errc::ProgramFault, "plan: pair solve needs theta outside {0,1}");
        Symbol h = value_of(st.high), l = value_of(st.low);
        Symbol a = gf::div(gf::add(h, l), gf::add(st.theta, 1));
        temps_[static_cast<size_t>(st.out_a)] = a;
        temps_[static_cast<size_t>(st.out_b)] = gf::add(h, a);
    }

    const BaseCode& base_;
    const RepairPlan& plan_;
    const CellProvider& fetch_;
    std::vector<Symbol> temps_;
    std::vector<char> have_;
    std::vector<Symbol> value_;
    std::vector<Cell> touched_;
};

} // namespace

std::vector<Symbol> execute(const BaseCode& base, const RepairPlan& plan, const CellProvider& fetch) {
    require(plan.has_program(), Errc::ProgramFault, "plan: no recovery program attached");
    return Runner(base, plan, fetch).run();
}

std::vector<Symbol> execute(const BaseCode& base, const RepairPlan& plan, const Grid& stripe) {
    require(stripe.rows == plan.n && stripe.cols == plan.m, Errc::Shape, "plan: stripe shape mismatch");
    return execute(base, plan, [&](Cell c) -> std::optional<Symbol> { return stripe.at(c); });
}

namespace {

std::string cell_str(Cell c) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "n%d:c%d", c.row + 1, c.col + 1);
    return buf;
}

std::string src_str(const Src& s) {
    if (s.kind == Src::Kind::CellRef) return cell_str(s.cell);
    return "t" + std::to_string(s.temp);
}

} // namespace

std::string plan_text(const RepairPlan& plan) {
    std::ostringstream os;
    os << "repair plan: node " << plan.failed + 1 << " of " << plan.n << ", " << plan.m
       << " symbols per node\n";
    os << "bandwidth: " << plan.bandwidth() << " symbols\n";
    os << "reads (" << plan.bandwidth() << "):";
    for (size_t i = 0; i < plan.reads.size(); ++i) {
        os << (i % 12 == 0 ? "\n  " : " ") << cell_str(plan.reads[i]);
    }
    os << "\nprogram:\n";
    int idx = 0;
    for (const Step& step : plan.program) {
        os << "  " << ++idx << ". ";
        if (const auto* d = std::get_if<DecodeColumnStep>(&step)) {
            os << "decode column " << d->col + 1 << " from rows {";
            for (size_t i = 0; i < d->inputs.size(); ++i)
                os << (i ? "," : "") << d->inputs[static_cast<size_t>(i)].first + 1;
            os << "} -> t" << d->out_base << "..t" << d->out_base + d->out_count - 1 << "\n";
        } else if (const auto* l = std::get_if<LinCombStep>(&step)) {
            os << "t" << l->out << " =";
            bool first = true;
            for (const auto& [coeff, src] : l->terms) {
                os << (first ? " " : " + ");
                first = false;
                if (coeff != 1) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "%02x", coeff);
                    os << buf << "*";
                }
                os << src_str(src);
            }
            os << "\n";
        } else if (const auto* p = std::get_if<PairSolveStep>(&step)) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "%02x", p->theta);
            os << "(t" << p->out_a << ",t" << p->out_b << ") = pair-solve high=" << src_str(p->high)
               << " low=" << src_str(p->low) << " theta=" << buf << "\n";
        }
    }
    os << "outputs:";
    for (const Src& s : plan.outputs) os << " " << src_str(s);
    os << "\n";
    return os.str();
}

PlanBuilder::PlanBuilder(int n, int m, int k, int failed, bool full) : full_(full) {
    plan_.n = n;
    plan_.m = m;
    plan_.k = k;
    plan_.failed = failed;
    plan_.outputs.assign(static_cast<size_t>(m), Src{});
    seen_.assign(static_cast<size_t>(n) * m, 0);
    outputs_set_.assign(static_cast<size_t>(m), 0);
}

Src PlanBuilder::read(Cell c) {
    require(c.row >= 0 && c.row < plan_.n && c.col >= 0 && c.col < plan_.m, Errc::ProgramFault,
            "plan: read outside stripe");
    require(c.row != plan_.failed, Errc::ProgramFault, "plan: read from failed node");
    size_t idx = static_cast<size_t>(c.row) * plan_.m + c.col;
    if (!seen_[idx]) {
        seen_[idx] = 1;
        plan_.reads.push_back(c);
    }
    return Src::of(c);
}

std::vector<Src> PlanBuilder::decode_column(int col, const std::vector<std::pair<int, Cell>>& inputs) {
    DecodeColumnStep step;
    step.col = col;
    step.out_base = plan_.temps;
    step.out_count = plan_.k;
    plan_.temps += plan_.k;
    std::vector<Src> outs;
    outs.reserve(static_cast<size_t>(plan_.k));
    for (int i = 0; i < plan_.k; ++i) outs.push_back(Src::of_temp(step.out_base + i));
    for (const auto& [base_row, c] : inputs) step.inputs.emplace_back(base_row, read(c));
    if (full_) plan_.program.push_back(std::move(step));
    return outs;
}

Src PlanBuilder::lincomb(std::vector<std::pair<Symbol, Src>> terms) {
    int out = new_temp();
    if (full_) plan_.program.push_back(LinCombStep{std::move(terms), out});
    return Src::of_temp(out);
}

std::pair<Src, Src> PlanBuilder::pair_solve(Cell high, Cell low, Symbol theta) {
    Src h = read(high), l = read(low);
    int a = new_temp(), b = new_temp();
    if (full_) plan_.program.push_back(PairSolveStep{h, l, theta, a, b});
    return {Src::of_temp(a), Src::of_temp(b)};
}

void PlanBuilder::set_output(int col, Src value) {
    require(col >= 0 && col < plan_.m, Errc::ProgramFault, "plan: output column out of range");
    require(!outputs_set_[static_cast<size_t>(col)], Errc::ProgramFault, "plan: output set twice");
    outputs_set_[static_cast<size_t>(col)] = 1;
    plan_.outputs[static_cast<size_t>(col)] = value;
}

RepairPlan PlanBuilder::finish() {
    for (char c : outputs_set_) require(c, Errc::ProgramFault, "plan: output column missing");
    std::sort(plan_.reads.begin(), plan_.reads.end());
    if (full_) validate_plan(plan_);
    return std::move(plan_);
}

} // namespace pbkc
