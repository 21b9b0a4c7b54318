#include "codescent/scenario_file.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "codescent/error.hpp"

namespace codescent {

namespace {

struct Value {
    std::size_t column = 0;
    bool is_list = false;
    std::string atom;
    std::vector<Value> items;
};

struct Entry {
    std::size_t line = 0;
    std::size_t key_column = 0;
    std::string key;
    Value value;
};

struct Section {
    std::size_t line = 0;
    std::vector<Entry> entries;
};

const char* const kSections[] = {"prime", "module", "descent", "run"};

bool is_atom_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '_';
}

class LineParser {
  public:
    LineParser(std::string_view text, std::size_t line, std::size_t start) : text_(text), line_(line), pos_(start) {}

    Value parse_value() {
        skip_space();
        Value v;
        v.column = pos_ + 1;
        if (peek() == '[') {
            v.is_list = true;
            ++pos_;
            skip_space();
            if (peek() == ']') {
                ++pos_;
                return v;
            }
            for (;;) {
                v.items.push_back(parse_value());
                skip_space();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                if (peek() == ']') {
                    ++pos_;
                    return v;
                }
                fail("expected ',' or ']'");
            }
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_atom_char(text_[pos_])) ++pos_;
        if (pos_ == start) fail(pos_ < text_.size() ? std::string("unexpected '") + text_[pos_] + "'" : "missing value");
        v.atom = std::string(text_.substr(start, pos_ - start));
        return v;
    }

    void expect_end() {
        skip_space();
        if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "' after value");
    }

  private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, pos_ + 1, what); }

    std::string_view text_;
    std::size_t line_;
    std::size_t pos_;
};

std::string_view strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) line.remove_suffix(1);
    return line;
}

std::size_t leading_space(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    return i;
}

std::map<std::string, Section> tokenize(std::string_view text) {
    std::map<std::string, Section> sections;
    Section* current = nullptr;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const std::string_view raw = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        const std::string_view line = strip_comment(raw);
        const std::size_t indent = leading_space(line);
        if (indent == line.size()) continue;

        if (line[indent] == '[') {
            const auto close = line.find(']', indent);
            if (close == std::string_view::npos) throw ParseError(line_no, line.size() + 1, "missing ']'");
            if (close + 1 != line.size()) throw ParseError(line_no, close + 2, "unexpected text after section header");
            const std::string name(line.substr(indent + 1, close - indent - 1));
            bool known = false;
            for (const char* s : kSections) known = known || name == s;
            if (!known) throw ParseError(line_no, indent + 2, "unknown section [" + name + "]");
            if (sections.count(name)) throw ParseError(line_no, indent + 1, "duplicate section [" + name + "]");
            current = &sections[name];
            current->line = line_no;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, indent + 1, "expected 'key = value'");
        std::string_view key = line.substr(indent, eq - indent);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.remove_suffix(1);
        if (key.empty()) throw ParseError(line_no, indent + 1, "missing key");
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (!std::isalnum(static_cast<unsigned char>(key[i])) && key[i] != '_') {
                throw ParseError(line_no, indent + i + 1, "invalid character in key");
            }
        }
        if (!current) throw ParseError(line_no, indent + 1, "entry outside of any section");

        LineParser lp(line, line_no, eq + 1);
        Value v = lp.parse_value();
        lp.expect_end();
        current->entries.push_back(Entry{line_no, indent + 1, std::string(key), std::move(v)});
    }
    return sections;
}

[[noreturn]] void fail_at(const Entry& e, const std::string& what) { throw ParseError(e.line, e.key_column, what); }
[[noreturn]] void fail_at(const Entry& e, const Value& v, const std::string& what) {
    throw ParseError(e.line, v.column, what);
}

mpz_class integer_of(const Entry& e, const Value& v) {
    if (v.is_list) fail_at(e, v, "expected an integer, found a list");
    std::string s = v.atom;
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    const bool digits = !s.empty() && s.find_first_not_of("0123456789", s[0] == '-' ? 1 : 0) == std::string::npos &&
                        s != "-";
    mpz_class z;
    if (!digits || z.set_str(s, 10) != 0) fail_at(e, v, "expected an integer, found '" + v.atom + "'");
    return z;
}

long bounded_integer(const Entry& e, long lo, long hi) {
    const mpz_class z = integer_of(e, e.value);
    if (z < lo || z > hi) {
        fail_at(e, e.value, e.key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return z.get_si();
}

IntPoly poly_of(const Entry& e, const Value& v) {
    if (!v.is_list) fail_at(e, v, "expected a coefficient list such as [0, 1]");
    std::vector<mpz_class> c;
    for (const auto& item : v.items) c.push_back(integer_of(e, item));
    return IntPoly(std::move(c));
}

class SectionReader {
  public:
    SectionReader(const std::map<std::string, Section>& sections, const std::string& name) : name_(name) {
        auto it = sections.find(name);
        if (it != sections.end()) section_ = &it->second;
    }

    bool present() const { return section_ != nullptr; }

    const Entry* single(const std::string& key) {
        const Entry* found = nullptr;
        if (!section_) return nullptr;
        for (const auto& e : section_->entries) {
            if (e.key != key) continue;
            if (found) fail_at(e, "duplicate key '" + key + "' in [" + name_ + "]");
            found = &e;
        }
        seen_.push_back(key);
        return found;
    }

    const Entry& required(const std::string& key) {
        const Entry* e = single(key);
        if (!e) throw ParseError(section_ ? section_->line : 0, 1, "[" + name_ + "] needs '" + key + "'");
        return *e;
    }

    std::vector<const Entry*> repeated(const std::string& key) {
        std::vector<const Entry*> out;
        if (section_) {
            for (const auto& e : section_->entries) {
                if (e.key == key) out.push_back(&e);
            }
        }
        seen_.push_back(key);
        return out;
    }

    void reject_unknown() const {
        if (!section_) return;
        for (const auto& e : section_->entries) {
            bool ok = false;
            for (const auto& k : seen_) ok = ok || k == e.key;
            if (!ok) fail_at(e, "unknown key '" + e.key + "' in [" + name_ + "]");
        }
    }

  private:
    std::string name_;
    const Section* section_ = nullptr;
    std::vector<std::string> seen_;
};

}  // namespace

ScenarioSpec parse_scenario(std::string_view text) {
    const auto sections = tokenize(text);
    for (const char* required : {"prime", "module", "descent", "run"}) {
        if (!sections.count(required)) throw ParseError(0, 0, std::string("missing section [") + required + "]");
    }

    SectionReader prime(sections, "prime");
    const Entry& l_entry = prime.required("l");
    const long l = bounded_integer(l_entry, 2, 1L << 31);
    prime.reject_unknown();
    if (!is_prime(static_cast<std::uint64_t>(l))) fail_at(l_entry, l_entry.value, std::to_string(l) + " is not prime");
    const Prime ell(static_cast<std::uint64_t>(l));

    // Torsion entries keep their file order, interleaving lpower and poly.
    SectionReader mod(sections, "module");
    const long free_rank = bounded_integer(mod.required("free_rank"), 0, 64);
    std::vector<const Entry*> torsion_entries;
    {
        auto lp = mod.repeated("lpower");
        auto po = mod.repeated("poly");
        torsion_entries.insert(torsion_entries.end(), lp.begin(), lp.end());
        torsion_entries.insert(torsion_entries.end(), po.begin(), po.end());
        std::sort(torsion_entries.begin(), torsion_entries.end(),
                  [](const Entry* a, const Entry* b) { return a->line < b->line; });
    }
    mod.reject_unknown();
    std::vector<TorsionFactor> torsion;
    for (const Entry* e : torsion_entries) {
        if (e->key == "lpower") {
            torsion.push_back(LPower{static_cast<unsigned>(bounded_integer(*e, 1, 64))});
            continue;
        }
        IntPoly p = poly_of(*e, e->value);
        if (p.degree() < 1) fail_at(*e, e->value, "torsion polynomial must have degree >= 1");
        if (!is_distinguished(p, ell)) fail_at(*e, e->value, p.to_string() + " is not distinguished");
        torsion.push_back(Distinguished{std::move(p)});
    }
    ElementaryModule module(ell, static_cast<std::size_t>(free_rank), std::move(torsion));

    SectionReader desc(sections, "descent");
    const Entry& kind = desc.required("kind");
    if (kind.value.is_list || (kind.value.atom != "special" && kind.value.atom != "generic")) {
        fail_at(kind, kind.value, "kind must be 'special' or 'generic'");
    }
    const Entry* level = desc.single("e");
    const auto gen_entries = desc.repeated("generator");
    desc.reject_unknown();
    std::optional<DescentDatum> descent;
    if (kind.value.atom == "special") {
        if (level) fail_at(*level, "special descent takes no level");
        if (!gen_entries.empty()) fail_at(*gen_entries.front(), "special descent takes no generators");
        descent = DescentDatum::special();
    } else {
        if (!level) throw ParseError(kind.line, 1, "generic descent needs 'e'");
        const auto e = static_cast<unsigned>(bounded_integer(*level, 0, 16));
        std::vector<ModuleElement> gens;
        for (const Entry* g : gen_entries) {
            if (!g->value.is_list) fail_at(*g, g->value, "generator must be a list of coefficient lists");
            if (g->value.items.size() > module.coordinate_count()) {
                fail_at(*g, g->value,
                        "generator has " + std::to_string(g->value.items.size()) + " coordinates, module has " +
                            std::to_string(module.coordinate_count()));
            }
            std::vector<IntPoly> coords;
            for (const auto& c : g->value.items) coords.push_back(poly_of(*g, c));
            gens.push_back(ModuleElement::from_coordinates(module, std::move(coords)));
        }
        descent = DescentDatum::generic(e, std::move(gens));
        const ValidationReport report = validate_descent(module, *descent);
        if (!report.valid) {
            const Entry& at = report.offending_generator && *report.offending_generator < gen_entries.size()
                                  ? *gen_entries[*report.offending_generator]
                                  : kind;
            fail_at(at, "invalid descent datum: " + report.message);
        }
    }

    SectionReader run(sections, "run");
    RunRange range;
    range.n_min = static_cast<unsigned>(bounded_integer(run.required("n_min"), 0, 64));
    const Entry& n_max = run.required("n_max");
    range.n_max = static_cast<unsigned>(bounded_integer(n_max, 0, 64));
    if (const Entry* k = run.single("k")) range.k = static_cast<int>(bounded_integer(*k, -64, 64));
    run.reject_unknown();
    if (range.n_max < range.n_min) fail_at(n_max, n_max.value, "n_max is smaller than n_min");

    return ScenarioSpec{std::move(module), std::move(*descent), range};
}

std::string serialize_scenario(const ScenarioSpec& spec, const std::string& title) {
    std::ostringstream os;
    if (!title.empty()) os << "# " << title << "\n";
    os << "[prime]\nl = " << spec.module.prime().value() << "\n\n";
    os << "[module]\nfree_rank = " << spec.module.free_rank() << "\n";
    for (const auto& f : spec.module.torsion()) {
        if (const auto* lp = std::get_if<LPower>(&f)) {
            os << "lpower = " << lp->exponent << "\n";
        } else {
            os << "poly = " << std::get<Distinguished>(f).poly.to_list_string() << "\n";
        }
    }
    os << "\n[descent]\n";
    if (spec.descent.is_special()) {
        os << "kind = special\n";
    } else {
        os << "kind = generic\ne = " << spec.descent.level() << "\n";
        for (const auto& y : spec.descent.generators()) {
            auto coords = y.coordinates();
            while (!coords.empty() && coords.back().is_zero()) coords.pop_back();
            os << "generator = [";
            for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? ", " : "") << coords[i].to_list_string();
            os << "]\n";
        }
    }
    os << "\n[run]\nn_min = " << spec.run.n_min << "\nn_max = " << spec.run.n_max << "\nk = " << spec.run.k << "\n";
    return os.str();
}

ScenarioSpec spec_of(const Scenario& s) { return ScenarioSpec{s.module, s.descent, s.run}; }

}  // namespace codescent
