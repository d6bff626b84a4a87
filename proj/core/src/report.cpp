#include "spurious/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>

#include "spurious/errors.hpp"

namespace spurious {

std::string format4(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

bool significant_at_1pct(double t_stat, std::size_t df) {
    return std::abs(t_stat) > critical_value(CriticalMode::Student, df, 0.01);
}

YuleReport yule_study(const Dataset& data, const std::string& y_column, const std::string& x_column) {
    const Series& y = data.column(y_column);
    const Series& x = data.column(x_column);
    YuleReport report;
    report.dataset = data.name;
    report.T = y.size();
    report.correlation = correlation(y, x);
    for (int number : {1, 2, 3}) {
        RegressionSpec spec;
        spec.number = number;
        RegressionBlock block;
        block.number = number;
        block.estimator = default_estimator(spec);
        block.fit = fit_regression(spec, x, y, FitOptions{block.estimator, std::nullopt});
        block.diagnostics = diagnose(block.fit);
        report.blocks.push_back(std::move(block));
    }
    return report;
}

namespace {

std::string coefficient_name(ColumnRole role, std::size_t break_no) {
    switch (role) {
        case ColumnRole::Const: return "alpha";
        case ColumnRole::Trend: return "beta";
        case ColumnRole::BreakDummy: return "delta" + std::to_string(break_no);
        case ColumnRole::Regressor: return "gamma";
    }
    return "?";
}

std::string cell(double estimate, double t_stat, std::size_t df) {
    std::string s = format4(estimate);
    if (significant_at_1pct(t_stat, df)) s += "‡";
    return s + " (" + format4(t_stat) + ")";
}

// std::setw counts bytes, so pad by code points to keep columns aligned around '‡'.
std::string pad(const std::string& s, std::size_t width) {
    std::size_t glyphs = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) ++glyphs;
    }
    return glyphs >= width ? s : std::string(width - glyphs, ' ') + s;
}

struct Row {
    std::string label;
    std::vector<std::string> cells;
};

std::vector<Row> coefficient_rows(const std::vector<const RegressionBlock*>& blocks) {
    std::vector<Row> rows;
    auto row_for = [&](const std::string& label) -> Row& {
        for (auto& r : rows) {
            if (r.label == label) return r;
        }
        rows.push_back({label, std::vector<std::string>(blocks.size())});
        return rows.back();
    };
    // Stable order: alpha, beta, break dummies, gamma, rho.
    for (const char* label : {"alpha", "beta"}) {
        for (const auto* b : blocks) {
            for (ColumnRole role : b->fit.roles) {
                if (coefficient_name(role, 0) == label) row_for(label);
            }
        }
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const FitResult& fit = blocks[i]->fit;
        std::size_t break_no = 0;
        for (std::size_t j = 0; j < fit.k(); ++j) {
            if (fit.roles[j] == ColumnRole::BreakDummy) ++break_no;
            const auto idx = static_cast<Eigen::Index>(j);
            row_for(coefficient_name(fit.roles[j], break_no)).cells[i] =
                cell(fit.coefficients(idx), fit.t_stats(idx), fit.df());
        }
    }
    // gamma is listed after the break dummies.
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].label == "gamma") {
            Row g = rows[i];
            rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
            rows.push_back(std::move(g));
            break;
        }
    }
    bool any_rho = false;
    Row rho{"rho", std::vector<std::string>(blocks.size())};
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const FitResult& fit = blocks[i]->fit;
        if (fit.rho_hat) {
            any_rho = true;
            rho.cells[i] = cell(*fit.rho_hat, fit.rho_t_stat.value_or(NAN), fit.df());
        }
    }
    if (any_rho) rows.push_back(std::move(rho));
    return rows;
}

void write_rows(std::ostream& out, const std::vector<std::string>& headers, const std::vector<Row>& rows) {
    constexpr std::size_t label_width = 14;
    constexpr std::size_t cell_width = 22;
    if (!headers.empty()) {
        out << std::left << std::setw(label_width) << "" << std::right;
        for (const auto& h : headers) out << pad(h, cell_width);
        out << '\n';
    }
    for (const auto& r : rows) {
        out << std::left << std::setw(label_width) << r.label << std::right;
        for (const auto& c : r.cells) out << pad(c.empty() ? "-" : c, cell_width);
        out << '\n';
    }
}

std::vector<Row> statistic_rows(const std::vector<const RegressionBlock*>& blocks) {
    std::vector<Row> rows = {{"Adj-R2", {}}, {"DW", {}}, {"Q(10)", {}}};
    bool any_fgls = false;
    for (const auto* b : blocks) {
        const DiagnosticsReport& d = b->diagnostics;
        rows[0].cells.push_back(format4(d.adj_r2_ar));
        rows[1].cells.push_back(format4(d.durbin_watson));
        rows[2].cells.push_back(format4(d.ljung_box_q));
        any_fgls = any_fgls || b->fit.rho_hat.has_value();
    }
    if (any_fgls) {
        Row transformed{"Adj-R2 (CO)", {}};
        Row levels{"Adj-R2 (lev)", {}};
        for (const auto* b : blocks) {
            transformed.cells.push_back(format4(b->diagnostics.adj_r2));
            levels.cells.push_back(format4(b->diagnostics.adj_r2_levels));
        }
        rows.insert(rows.begin() + 1, std::move(levels));
        rows.insert(rows.begin() + 1, std::move(transformed));
    }
    return rows;
}

}  // namespace

void write_yule_report(std::ostream& out, const YuleReport& report) {
    out << "Mortality on Church of England marriages (" << report.dataset << ")\n";
    out << "T = " << report.T << ", correlation = " << format4(report.correlation) << "\n\n";
    std::vector<const RegressionBlock*> blocks;
    std::vector<std::string> headers;
    for (const auto& b : report.blocks) {
        blocks.push_back(&b);
        headers.push_back("Regression " + std::to_string(b.number));
    }
    write_rows(out, headers, coefficient_rows(blocks));
    write_rows(out, {}, statistic_rows(blocks));
    out << "\nt-statistics in parentheses; ‡ significant at the 1% level.\n";
    out << "Regression 3 is FGLS (Cochrane-Orcutt); its DW and Q(10) use the transformed residuals.\n";
    out << "Adj-R2 of regression 3: transformed residuals against y, rho counted as a parameter;\n"
           "Adj-R2 (CO): transformed equation; Adj-R2 (lev): y - Xb in levels.\n";
}

void write_fit_report(std::ostream& out, const RegressionBlock& block, const std::string& y_name,
                      const std::string& x_name) {
    const FitResult& fit = block.fit;
    out << "Regression " << block.number << " of " << y_name << " on " << x_name << " ("
        << to_string(block.estimator) << ", " << to_string(fit.se_kind) << " standard errors";
    if (fit.se_kind == SeKind::NeweyWest) out << ", lag " << fit.nw_lag;
    out << ")\n";
    out << "effective T = " << fit.effective_T << ", k = " << fit.k() << "\n\n";
    const std::vector<const RegressionBlock*> blocks = {&block};
    write_rows(out, {"estimate (t)"}, coefficient_rows(blocks));
    write_rows(out, {}, statistic_rows(blocks));
    out << "\n‡ significant at the 1% level.\n";
}

}  // namespace spurious
