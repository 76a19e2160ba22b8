#include "caenc/keyfile.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <map>
#include <sstream>

namespace caenc {

namespace {

std::vector<std::string> split_words(std::string_view line) {
    std::vector<std::string> words;
    std::istringstream in{std::string(line)};
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

int parse_int(const std::string& token, int lo, int hi, const std::string& field) {
    int v = 0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec == std::errc::result_out_of_range) throw FormatError("key: " + field + " value '" + token + "' out of range");
    if (ec != std::errc{} || end != token.data() + token.size())
        throw FormatError("key: " + field + " value '" + token + "' is not an integer");
    if (v < lo || v > hi)
        throw FormatError("key: " + field + " value " + token + " out of range " + std::to_string(lo) + ".." +
                          std::to_string(hi));
    return v;
}

std::string nearby_rules(const Key& key) {
    std::vector<int> usable;
    for (const auto& p : find_maca(key.boundary, key.block_m, key.block_n, 2)) usable.push_back(p.spec.rule);
    if (usable.empty()) return "no rule gives a usable MACA at this block size";
    std::stable_sort(usable.begin(), usable.end(),
                     [&](int a, int b) { return std::abs(a - key.rule) < std::abs(b - key.rule); });
    usable.resize(std::min<std::size_t>(usable.size(), 5));
    std::sort(usable.begin(), usable.end());
    std::string s = "nearby usable rules:";
    for (int r : usable) s += " " + std::to_string(r);
    return s;
}

}  // namespace

ParsedKey key_parse(std::string_view text) {
    std::map<std::string, std::vector<std::string>> fields;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto words = split_words(line);
        if (words.empty()) continue;
        const std::string& name = words.front();
        static const std::map<std::string, std::size_t> arity = {
            {"version", 1}, {"block", 2}, {"boundary", 1}, {"rule", 1}, {"enc", 2}};
        auto it = arity.find(name);
        if (it == arity.end()) throw FormatError("key: unknown line '" + line + "'");
        if (words.size() != it->second + 1) throw FormatError("key: malformed '" + name + "' line");
        if (!fields.emplace(name, std::vector<std::string>(words.begin() + 1, words.end())).second)
            throw FormatError("key: duplicate '" + name + "' line");
    }
    for (const char* required : {"version", "block", "boundary", "rule", "enc"})
        if (!fields.count(required)) throw FormatError(std::string("key: missing '") + required + "' line");

    if (fields["version"][0] != "1") throw FormatError("key: unsupported version " + fields["version"][0]);

    ParsedKey out;
    Key& k = out.key;
    k.block_m = parse_int(fields["block"][0], 1, 255, "block");
    k.block_n = parse_int(fields["block"][1], 1, 255, "block");
    try {
        k.boundary = parse_boundary(fields["boundary"][0]);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("key: ") + e.what());
    }
    k.rule = parse_int(fields["rule"][0], 0, 511, "rule");
    k.enc_a = parse_int(fields["enc"][0], 0, 65535, "enc");
    k.enc_b = parse_int(fields["enc"][1], 0, 65535, "enc");

    try {
        out.profile = key_profile(k);
    } catch (const InvalidKey& e) {
        throw InvalidKey(std::string(e.what()) + "; " + nearby_rules(k));
    }
    if (out.profile.attractor_bits == out.profile.spec.cells())
        out.warnings.push_back("rule " + std::to_string(k.rule) +
                               " fixes every block state: compression ratio is 1 (no compression)");
    return out;
}

std::string key_write(const Key& key) {
    return "version 1\nblock " + std::to_string(key.block_m) + " " + std::to_string(key.block_n) + "\nboundary " +
           std::string(to_string(key.boundary)) + "\nrule " + std::to_string(key.rule) + "\nenc " +
           std::to_string(key.enc_a) + " " + std::to_string(key.enc_b) + "\n";
}

}  // namespace caenc
