#include "eclc/dsl.hpp"

#include <map>
#include <set>

#include "lexer.hpp"

namespace eclc {

using detail::Tok;
using detail::Token;
using detail::TokenCursor;

std::string_view to_string(ScenarioKind kind) noexcept {
    switch (kind) {
    case ScenarioKind::Coherence: return "coherence";
    case ScenarioKind::Reciprocity: return "reciprocity";
    case ScenarioKind::Accessibility: return "accessibility";
    }
    return "coherence";
}

std::optional<ScenarioKind> scenario_kind_from(std::string_view text) noexcept {
    if (text == "coherence") return ScenarioKind::Coherence;
    if (text == "reciprocity") return ScenarioKind::Reciprocity;
    if (text == "accessibility") return ScenarioKind::Accessibility;
    return std::nullopt;
}

const NamedSequent* ScenarioConfig::find_sequent(std::string_view name) const {
    for (const auto& s : sequents)
        if (s.name == name) return &s;
    return nullptr;
}

namespace {

const std::vector<std::string> kDirectives{"'scenario'", "'world'", "'edge'",     "'prop'",  "'law'",
                                           "'cost'",     "'alpha'", "'observer'", "'sequent'", "a setting"};

struct WorldRef {
    std::string id;
    Token at;
};

struct PendingWorld {
    World world;
    bool has_kappa = false;
};

struct PendingEdge {
    WorldRef from, to;
    double delta_e = 0.0;
};

struct PendingProp {
    WorldRef world;
    Formula formula;
};

struct PendingObserver {
    Observer observer;
    Token id_at;
    WorldRef home;
};

struct PendingSequent {
    NamedSequent sequent;
    Token name_at;
    WorldRef source, target;
};

class ScenarioParser {
public:
    explicit ScenarioParser(const FormulaSyntax& syntax) : syntax_(syntax) {}

    ScenarioConfig parse(std::string_view text) {
        unsigned line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            ++line_no;
            std::size_t nl = text.find('\n', start);
            std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            parse_line(line, line_no);
            if (nl == std::string_view::npos) break;
            start = nl + 1;
        }
        return finish();
    }

private:
    void parse_line(std::string_view line, unsigned line_no) {
        TokenCursor c(detail::tokenize_line(line, line_no));
        if (c.at_end()) return;
        if (!c.at(Tok::Ident)) c.fail("expected a directive", kDirectives);
        const Token head = c.next();
        const std::string& word = head.text;
        if (word == "world") parse_world(c);
        else if (word == "edge") parse_edge(c);
        else if (word == "prop") parse_prop(c);
        else if (word == "law") laws_.push_back(parse_formula_here(c));
        else if (word == "cost") parse_cost(c);
        else if (word == "observer") parse_observer(c);
        else if (word == "sequent") parse_sequent(c);
        else if (word == "scenario") parse_kind(c, head);
        else if (c.at(Tok::Equals)) parse_setting(c, head);
        else c.fail_at(head, "unknown directive '" + word + "'", kDirectives);
        if (!c.at_end()) c.fail("unexpected '" + c.peek().text + "' at end of directive", {"end of line"});
    }

    Formula parse_formula_here(TokenCursor& c) { return detail::parse_formula_tokens(c, syntax_); }

    WorldRef world_ref(TokenCursor& c) {
        Token at = c.peek();
        std::string id = c.expect_ident("world id");
        return {std::move(id), std::move(at)};
    }

    void once(const Token& at, const std::string& key) {
        if (!seen_settings_.insert(key).second) throw ParseError(at.line, at.column, "duplicate setting '" + key + "'");
    }

    void parse_kind(TokenCursor& c, const Token& head) {
        once(head, "scenario");
        Token at = c.peek();
        std::string kind = c.expect_ident("scenario kind");
        auto parsed = scenario_kind_from(kind);
        if (!parsed)
            c.fail_at(at, "unknown scenario kind '" + kind + "'", {"'coherence'", "'reciprocity'", "'accessibility'"});
        config_.scenario_kind = *parsed;
    }

    void parse_setting(TokenCursor& c, const Token& key) {
        c.expect(Tok::Equals);
        const Token value_at = c.peek();
        auto nonnegative = [&](double v) {
            if (v < 0.0) c.fail_at(value_at, "'" + key.text + "' must be nonnegative");
            return v;
        };
        if (key.text == "alpha") {
            config_.cost_model.alpha = nonnegative(detail::parse_real_token(c, "alpha"));
        } else if (key.text == "default_cost") {
            config_.cost_model.default_cost = nonnegative(detail::parse_real_token(c, "default cost"));
        } else if (key.text == "noise") {
            config_.noise = nonnegative(detail::parse_real_token(c, "noise"));
        } else if (key.text == "kappa0") {
            config_.kappa0 = nonnegative(detail::parse_real_token(c, "kappa0"));
        } else if (key.text == "seed") {
            config_.seed = detail::parse_unsigned_token(c, "seed");
        } else if (key.text == "trials" || key.text == "width") {
            auto v = detail::parse_unsigned_token(c, key.text);
            if (v < 1 || v > 1'000'000'000ULL) c.fail_at(value_at, "'" + key.text + "' must be between 1 and 1e9");
            (key.text == "trials" ? config_.trials : config_.width) = static_cast<unsigned>(v);
        } else {
            c.fail_at(key, "unknown setting '" + key.text + "'",
                      {"'alpha'", "'default_cost'", "'trials'", "'seed'", "'noise'", "'kappa0'", "'width'"});
        }
        once(key, key.text);
    }

    void parse_world(TokenCursor& c) {
        Token id_at = c.peek();
        PendingWorld pending;
        pending.world.id = c.expect_ident("world id");
        if (!world_ids_.insert(pending.world.id).second)
            c.fail_at(id_at, "duplicate world id '" + pending.world.id + "'");
        c.expect(Tok::LBrace);
        std::set<std::string> keys;
        bool has_energy = false, has_lambda = false;
        while (!c.at(Tok::RBrace)) {
            Token key_at = c.peek();
            std::string key = c.expect_ident("'energy', 'kappa' or 'lambda'");
            if (!keys.insert(key).second) c.fail_at(key_at, "duplicate attribute '" + key + "'");
            c.expect(Tok::Equals);
            Token value_at = c.peek();
            if (key == "energy") {
                pending.world.energy = detail::parse_real_token(c, "energy");
                if (pending.world.energy < 0.0) c.fail_at(value_at, "energy must be nonnegative");
                has_energy = true;
            } else if (key == "kappa") {
                pending.world.kappa = detail::parse_real_token(c, "kappa");
                if (pending.world.kappa < 0.0) c.fail_at(value_at, "kappa must be nonnegative");
                pending.has_kappa = true;
            } else if (key == "lambda") {
                auto v = detail::parse_unsigned_token(c, "lambda");
                if (v < 1 || v > 1'000'000ULL) c.fail_at(value_at, "lambda must be between 1 and 1000000");
                pending.world.lambda = static_cast<unsigned>(v);
                has_lambda = true;
            } else {
                c.fail_at(key_at, "unknown world attribute '" + key + "'", {"'energy'", "'kappa'", "'lambda'"});
            }
            if (!c.at(Tok::RBrace)) c.expect(Tok::Comma);
        }
        Token close = c.next();
        if (!has_energy) c.fail_at(close, "world '" + pending.world.id + "' needs an energy", {"'energy'"});
        if (!has_lambda) c.fail_at(close, "world '" + pending.world.id + "' needs a lambda", {"'lambda'"});
        worlds_.push_back(std::move(pending));
    }

    void parse_edge(TokenCursor& c) {
        PendingEdge edge;
        edge.from = world_ref(c);
        c.expect(Tok::Arrow);
        edge.to = world_ref(c);
        c.expect(Tok::LBrace);
        Token key_at = c.peek();
        std::string key = c.expect_ident("'deltaE'");
        if (key != "deltaE") c.fail_at(key_at, "unknown edge attribute '" + key + "'", {"'deltaE'"});
        c.expect(Tok::Equals);
        Token value_at = c.peek();
        edge.delta_e = detail::parse_real_token(c, "deltaE");
        if (edge.delta_e < 0.0) c.fail_at(value_at, "deltaE must be nonnegative");
        c.expect(Tok::RBrace);
        edges_.push_back(std::move(edge));
    }

    void parse_prop(TokenCursor& c) {
        WorldRef world = world_ref(c);
        c.expect(Tok::Colon);
        props_.push_back({std::move(world), parse_formula_here(c)});
    }

    void parse_cost(TokenCursor& c) {
        Token at = c.peek();
        std::string atom = c.expect_ident("atom name");
        c.expect(Tok::Equals);
        Token value_at = c.peek();
        double cost = detail::parse_real_token(c, "cost");
        if (cost < 0.0) c.fail_at(value_at, "cost must be nonnegative");
        if (!config_.cost_model.atom_costs.emplace(atom, cost).second)
            c.fail_at(at, "duplicate cost for atom '" + atom + "'");
    }

    void parse_observer(TokenCursor& c) {
        PendingObserver pending;
        pending.id_at = c.peek();
        pending.observer.id = c.expect_ident("observer id");
        bool has_home = false, has_horizon = false;
        while (!c.at_end()) {
            Token key_at = c.peek();
            std::string key = c.expect_ident("'home' or 'horizon'");
            c.expect(Tok::Equals);
            if (key == "home" && !has_home) {
                pending.home = world_ref(c);
                pending.observer.home = pending.home.id;
                has_home = true;
            } else if (key == "horizon" && !has_horizon) {
                auto v = detail::parse_unsigned_token(c, "horizon");
                if (v > 1'000'000ULL) c.fail_at(key_at, "horizon is too large");
                pending.observer.horizon = static_cast<unsigned>(v);
                has_horizon = true;
            } else {
                c.fail_at(key_at, "unexpected observer attribute '" + key + "'", {"'home'", "'horizon'"});
            }
        }
        if (!has_home) c.fail("observer '" + pending.observer.id + "' needs a home", {"'home'"});
        if (!has_horizon) c.fail("observer '" + pending.observer.id + "' needs a horizon", {"'horizon'"});
        observers_.push_back(std::move(pending));
    }

    std::vector<Formula> formula_list(TokenCursor& c, Tok stop) {
        std::vector<Formula> out;
        if (c.at(stop)) return out;
        out.push_back(parse_formula_here(c));
        while (c.at(Tok::Comma)) {
            c.next();
            out.push_back(parse_formula_here(c));
        }
        return out;
    }

    void parse_sequent(TokenCursor& c) {
        PendingSequent pending;
        pending.name_at = c.peek();
        pending.sequent.name = c.expect_ident("sequent name");
        pending.source = world_ref(c);
        c.expect(Tok::Arrow);
        pending.target = world_ref(c);
        c.expect(Tok::Colon);
        pending.sequent.source = pending.source.id;
        pending.sequent.target = pending.target.id;
        pending.sequent.sequent.gamma = formula_list(c, Tok::Turnstile);
        c.expect(Tok::Turnstile);
        pending.sequent.sequent.delta = formula_list(c, Tok::End);
        sequents_.push_back(std::move(pending));
    }

    void require_world(const WorldRef& ref) const {
        if (!world_ids_.count(ref.id))
            throw ParseError(ref.at.line, ref.at.column, "unknown world '" + ref.id + "'");
    }

    ScenarioConfig finish() {
        if (worlds_.empty()) throw ParseError(1, 1, "no worlds declared", {"'world'"});
        for (std::size_t i = 0; i < worlds_.size(); ++i) {
            World w = worlds_[i].world;
            if (!worlds_[i].has_kappa) w.kappa = static_cast<double>(i) * config_.kappa0;
            config_.frame.add_world(std::move(w));
        }
        std::set<std::pair<std::string, std::string>> pairs;
        for (const auto& e : edges_) {
            require_world(e.from);
            require_world(e.to);
            if (!pairs.insert({e.from.id, e.to.id}).second)
                throw ParseError(e.from.at.line, e.from.at.column,
                                 "duplicate edge " + e.from.id + " -> " + e.to.id);
            config_.frame.add_edge(Edge{e.from.id, e.to.id, e.delta_e});
        }
        for (const auto& p : props_) {
            require_world(p.world);
            config_.frame.world(p.world.id).props.push_back(p.formula);
        }
        for (auto& law : laws_) config_.frame.add_law(std::move(law));
        std::set<std::string> observer_ids;
        for (auto& o : observers_) {
            require_world(o.home);
            if (!observer_ids.insert(o.observer.id).second)
                throw ParseError(o.id_at.line, o.id_at.column, "duplicate observer id '" + o.observer.id + "'");
            config_.observers.push_back(std::move(o.observer));
        }
        std::set<std::string> sequent_names;
        for (auto& s : sequents_) {
            require_world(s.source);
            require_world(s.target);
            if (!sequent_names.insert(s.sequent.name).second)
                throw ParseError(s.name_at.line, s.name_at.column, "duplicate sequent name '" + s.sequent.name + "'");
            config_.sequents.push_back(std::move(s.sequent));
        }
        return std::move(config_);
    }

    const FormulaSyntax& syntax_;
    ScenarioConfig config_;
    std::set<std::string> world_ids_;
    std::set<std::string> seen_settings_;
    std::vector<PendingWorld> worlds_;
    std::vector<PendingEdge> edges_;
    std::vector<PendingProp> props_;
    std::vector<Formula> laws_;
    std::vector<PendingObserver> observers_;
    std::vector<PendingSequent> sequents_;
};

std::string formula_list_text(const std::vector<Formula>& formulas, const FormulaSyntax& syntax) {
    std::string out;
    for (std::size_t i = 0; i < formulas.size(); ++i) {
        if (i) out += ", ";
        out += format_formula(formulas[i], syntax);
    }
    return out;
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text, const FormulaSyntax& syntax) {
    return ScenarioParser(syntax).parse(text);
}

std::string serialize_scenario(const ScenarioConfig& config, const FormulaSyntax& syntax) {
    std::string out;
    auto line = [&](const std::string& s) {
        out += s;
        out += '\n';
    };
    line("scenario " + std::string(to_string(config.scenario_kind)));
    line("alpha = " + format_real(config.cost_model.alpha));
    line("default_cost = " + format_real(config.cost_model.default_cost));
    for (const auto& [atom, cost] : config.cost_model.atom_costs) line("cost " + atom + " = " + format_real(cost));
    line("trials=" + std::to_string(config.trials));
    if (config.seed) line("seed=" + std::to_string(*config.seed));
    line("noise=" + format_real(config.noise));
    line("kappa0=" + format_real(config.kappa0));
    line("width=" + std::to_string(config.width));
    for (const auto& w : config.frame.worlds())
        line("world " + w.id + " { energy=" + format_real(w.energy) + ", kappa=" + format_real(w.kappa) +
             ", lambda=" + std::to_string(w.lambda) + " }");
    for (const auto& e : config.frame.edges())
        line("edge " + e.from + " -> " + e.to + " { deltaE=" + format_real(e.delta_e) + " }");
    for (const auto& w : config.frame.worlds())
        for (const auto& p : w.props) line("prop " + w.id + " : " + format_formula(p, syntax));
    for (const auto& law : config.frame.laws()) line("law " + format_formula(law, syntax));
    for (const auto& o : config.observers)
        line("observer " + o.id + " home=" + o.home + " horizon=" + std::to_string(o.horizon));
    for (const auto& s : config.sequents) {
        std::string lhs = formula_list_text(s.sequent.gamma, syntax);
        std::string rhs = formula_list_text(s.sequent.delta, syntax);
        line("sequent " + s.name + " " + s.source + " -> " + s.target + " : " + lhs + (lhs.empty() ? "|-" : " |-") +
             (rhs.empty() ? "" : " " + rhs));
    }
    return out;
}

}  // namespace eclc
