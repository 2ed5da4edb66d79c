#include "apspec/model_file.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace aps {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (trim(value.substr(used)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw ModelFileError("bad numeric value for '" + key + "': " + value);
}

std::vector<double> parse_sample_list(const std::string& text) {
    std::istringstream is(text);
    std::vector<double> out;
    double v;
    while (is >> v) out.push_back(v);
    if (!is.eof()) throw ModelFileError("bad sample value in: " + text);
    return out;
}

std::vector<double> read_samples_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelFileError("cannot open samples file: " + path);
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        auto vs = parse_sample_list(line);
        out.insert(out.end(), vs.begin(), vs.end());
    }
    return out;
}

using KeyValues = std::map<std::string, std::string>;

PotentialPiece build_piece(Letter letter, const KeyValues& kv, const std::string& source_dir) {
    auto get = [&](const std::string& key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    const std::string* kind = get("kind");
    if (!kind) throw ModelFileError(std::string("letter ") + letter + ": missing 'kind'");

    double length = 1.0;
    if (const std::string* l = get("length")) length = parse_real("length", *l);
    if (!(length > 0))
        throw ModelFileError(std::string("letter ") + letter + ": length must be > 0");

    if (*kind == "constant") {
        double value = 0.0;
        if (const std::string* v = get("value")) value = parse_real("value", *v);
        return PotentialPiece::constant(value, length);
    }
    if (*kind == "delta") {
        const std::string* s = get("strength");
        if (!s) s = get("value");
        if (!s) throw ModelFileError(std::string("letter ") + letter + ": delta needs 'strength'");
        return PotentialPiece::point_interaction(parse_real("strength", *s), length);
    }
    if (*kind == "sampled") {
        std::vector<double> samples;
        if (const std::string* inline_samples = get("samples")) {
            samples = parse_sample_list(*inline_samples);
        } else if (const std::string* file = get("samples-file")) {
            std::string path = *file;
            if (!path.empty() && path[0] != '/') path = source_dir + "/" + path;
            samples = read_samples_file(path);
        } else {
            throw ModelFileError(std::string("letter ") + letter +
                                 ": sampled needs 'samples' or 'samples-file'");
        }
        if (samples.size() < 2)
            throw ModelFileError(std::string("letter ") + letter + ": need >= 2 samples");
        return PotentialPiece::sampled(std::move(samples), length);
    }
    throw ModelFileError(std::string("letter ") + letter + ": unknown kind '" + *kind + "'");
}

}  // namespace

Model parse_model(std::istream& in, const std::string& source_dir) {
    KeyValues top;
    std::map<Letter, KeyValues> sections;
    KeyValues* current = &top;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ModelFileError("line " + std::to_string(lineno) + ": unterminated section");
            std::string name = trim(line.substr(1, line.size() - 2));
            if (name.rfind("letter ", 0) != 0 || trim(name.substr(7)).size() != 1)
                throw ModelFileError("line " + std::to_string(lineno) +
                                     ": expected [letter X] section, got [" + name + "]");
            current = &sections[trim(name.substr(7))[0]];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ModelFileError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ModelFileError("line " + std::to_string(lineno) + ": empty key");
        if (!current->emplace(key, value).second)
            throw ModelFileError("line " + std::to_string(lineno) + ": duplicate key '" + key +
                                 "'");
    }

    Model model;
    auto it = top.find("alphabet");
    if (it == top.end()) throw ModelFileError("missing 'alphabet'");
    for (char c : it->second) {
        if (model.alphabet.contains(c)) throw ModelFileError("duplicate alphabet letter");
        model.alphabet.letters.push_back(c);
    }
    if (model.alphabet.letters.empty()) throw ModelFileError("empty alphabet");

    for (Letter c : model.alphabet.letters) {
        auto rule = top.find(std::string("substitution.") + c);
        if (rule == top.end())
            throw ModelFileError(std::string("missing substitution rule for letter ") + c);
        if (rule->second.empty())
            throw ModelFileError(std::string("empty substitution rule for letter ") + c);
        for (char r : rule->second)
            if (!model.alphabet.contains(r))
                throw ModelFileError(std::string("substitution rule for ") + c +
                                     " uses unknown letter " + r);
        model.substitution.rules[c] = rule->second;
    }

    auto designated = [&](const char* key, Letter fallback) {
        auto f = top.find(key);
        if (f == top.end()) return fallback;
        if (f->second.size() != 1 || !model.alphabet.contains(f->second[0]))
            throw ModelFileError(std::string(key) + " must name one alphabet letter");
        return f->second[0];
    };
    model.letter_a = designated("letter_a", model.alphabet.letters[0]);
    model.letter_b = designated("letter_b", model.alphabet.letters.size() > 1
                                                ? model.alphabet.letters[1]
                                                : model.alphabet.letters[0]);

    for (const auto& [key, value] : top) {
        if (key.rfind("param.", 0) == 0)
            model.parameters[key.substr(6)] = parse_real(key, value);
    }

    for (Letter c : model.alphabet.letters) {
        auto sec = sections.find(c);
        if (sec == sections.end())
            throw ModelFileError(std::string("missing [letter ") + c + "] section");
        model.pieces[c] = build_piece(c, sec->second, source_dir);
    }
    for (const auto& [letter, kv] : sections) {
        (void)kv;
        if (!model.alphabet.contains(letter))
            throw ModelFileError(std::string("section for unknown letter ") + letter);
    }
    return model;
}

Model read_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelFileError("cannot open model file: " + path);
    auto slash = path.find_last_of('/');
    std::string dir = slash == std::string::npos ? "." : path.substr(0, slash);
    return parse_model(in, dir);
}

void write_model(const Model& model, std::ostream& out) {
    auto real = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };

    out << "alphabet = ";
    for (Letter c : model.alphabet.letters) out << c;
    out << '\n';
    for (Letter c : model.alphabet.letters)
        out << "substitution." << c << " = " << model.substitution.rules.at(c) << '\n';
    out << "letter_a = " << model.letter_a << '\n';
    out << "letter_b = " << model.letter_b << '\n';
    for (const auto& [name, value] : model.parameters)
        out << "param." << name << " = " << real(value) << '\n';

    for (Letter c : model.alphabet.letters) {
        const PotentialPiece& p = model.piece(c);
        out << "\n[letter " << c << "]\n";
        switch (p.kind) {
            case PotentialPiece::Kind::Constant:
                out << "kind = constant\n";
                out << "value = " << real(p.value) << '\n';
                break;
            case PotentialPiece::Kind::PointInteraction:
                out << "kind = delta\n";
                out << "strength = " << real(p.value) << '\n';
                break;
            case PotentialPiece::Kind::Sampled:
                out << "kind = sampled\n";
                out << "samples =";
                for (double s : p.samples) out << ' ' << real(s);
                out << '\n';
                break;
        }
        out << "length = " << real(p.length) << '\n';
    }
}

void write_model_file(const Model& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ModelFileError("cannot open for writing: " + path);
    write_model(model, out);
}

}  // namespace aps
