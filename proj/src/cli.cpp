#include "caenc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

#include "caenc/algebra.hpp"
#include "caenc/codec.hpp"
#include "caenc/keyfile.hpp"
#include "caenc/maca.hpp"
#include "caenc/pbm.hpp"
#include "caenc/rules.hpp"

namespace caenc::cli {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing '" + path + "'");
}

ParsedKey load_key(const std::string& path, std::ostream& err) {
    auto bytes = read_file(path);
    ParsedKey k = key_parse(std::string(bytes.begin(), bytes.end()));
    for (const auto& w : k.warnings) err << "warning: " << w << "\n";
    return k;
}

std::string count_string(std::size_t bits) {
    if (bits < 63) return std::to_string(std::uint64_t{1} << bits);
    return "2^" + std::to_string(bits);
}

std::string cell_list(const MacaProfile& p) {
    std::string s;
    for (std::size_t i = 0; i < p.pef_positions.size(); ++i) {
        std::size_t cell = p.pef_positions[i];
        if (i) s += ",";
        s += "(" + std::to_string(cell / p.spec.n + 1) + "," + std::to_string(cell % p.spec.n + 1) + ")";
    }
    return s.empty() ? "-" : s;
}

std::string profile_line(const MacaProfile& p) {
    if (!p.is_maca) return "maca=false rank=" + std::to_string(p.rank);
    return "depth=" + std::to_string(p.depth) + " k=" + count_string(p.attractor_bits) +
           " rank=" + std::to_string(p.rank) + " pef=" + cell_list(p) + " ratio=" + compression_ratio(p).to_string();
}

template <typename T>
std::string join(const std::vector<T>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

struct GridArgs {
    std::vector<int> dims;
    std::string boundary = "null";

    int m() const { return dims.at(0); }
    int n() const { return dims.at(1); }
    Boundary kind() const { return parse_boundary(boundary); }
};

void add_grid_options(CLI::App* cmd, GridArgs& g, bool dims_required = true) {
    auto* opt = cmd->add_option("--dims", g.dims, "Grid rows and columns")->expected(2)->check(CLI::PositiveNumber);
    if (dims_required) opt->required();
    cmd->add_option("--boundary", g.boundary, "null or periodic")
        ->check(CLI::IsMember({"null", "periodic"}))
        ->capture_default_str();
}

int verify_command(int max_dims, int maca_cells, std::uint64_t seed, std::ostream& out) {
    std::size_t claims_total = 0, deviations = 0;
    for (Boundary b : {Boundary::null, Boundary::periodic})
        for (int m = 1; m <= max_dims; ++m)
            for (int n = 1; n <= max_dims; ++n) {
                ClosureSet c = close_basic(b, m, n);
                AxiomReport r = verify_axioms(c, seed);
                auto claims = check_claims(c, r, b, m, n);
                out << "== algebra " << to_string(b) << " " << m << "x" << n << " ==\n";
                out << format_report(r) << format_claims(claims);
                claims_total += claims.size();
                deviations += static_cast<std::size_t>(
                    std::count_if(claims.begin(), claims.end(), [](const ClaimCheck& cl) { return !cl.holds; }));
            }

    std::size_t grids = 0, macas = 0;
    std::vector<std::string> violations;
    for (Boundary b : {Boundary::null, Boundary::periodic})
        for (int m = 1; m <= maca_cells; ++m)
            for (int n = 1; m * n <= maca_cells; ++n) {
                ++grids;
                for (int rule = 0; rule <= 511; ++rule) {
                    MacaProfile p = maca_profile({rule, b, m, n});
                    if (!p.is_maca) continue;
                    ++macas;
                    auto bad = check_profile_against_std(p, build_std(p.transform, m, n));
                    auto brute = pef_positions(p.attractor_basis, p.spec.cells(), PefStrategy::brute_force);
                    if (brute.size() != p.pef_positions.size() || !is_pseudo_exhaustive(p.attractor_basis, brute))
                        bad.push_back("rule " + std::to_string(rule) + " " + std::string(to_string(b)) + " " +
                                      std::to_string(m) + "x" + std::to_string(n) +
                                      ": PEF strategies disagree on size");
                    violations.insert(violations.end(), bad.begin(), bad.end());
                }
            }
    out << "== maca sweep (cells <= " << maca_cells << ") ==\n";
    out << "grids=" << grids << " maca_rules=" << macas << " violations=" << violations.size() << "\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(violations.size(), 20); ++i) out << "  " << violations[i] << "\n";

    out << "summary: " << deviations << " of " << claims_total << " claims deviate, " << violations.size()
        << " maca violations\n";
    return deviations == 0 && violations.empty() ? kOk : kVerificationFailed;
}

}  // namespace

CommandResult run(const std::vector<std::string>& argv) {
    CommandResult result;
    std::ostringstream out, err;

    CLI::App app{"Two-dimensional cellular automata: rule matrices, MACA analysis, encompression"};
    app.name(argv.empty() ? "caenc" : argv.front());
    app.require_subcommand(1);

    // keygen
    std::vector<int> kg_block;
    std::string kg_boundary = "null";
    int kg_rule = -1;
    std::vector<int> kg_enc;
    std::size_t kg_min_k = 2;
    std::uint64_t kg_seed = kDefaultSeed;
    std::string kg_output;
    auto* keygen = app.add_subcommand("keygen", "Write a key file for a block size");
    keygen->add_option("--block", kg_block, "Block rows and columns")->expected(2)->required()->check(CLI::Range(1, 255));
    keygen->add_option("--boundary", kg_boundary)->check(CLI::IsMember({"null", "periodic"}))->capture_default_str();
    keygen->add_option("--rule", kg_rule, "MACA rule (default: seeded pick)")->check(CLI::Range(0, 511));
    keygen->add_option("--enc", kg_enc, "Translation exponents (default: seeded pick)")
        ->expected(2)
        ->check(CLI::Range(0, 65535));
    keygen->add_option("--min-k", kg_min_k, "Least attractor count for a seeded pick")->capture_default_str();
    keygen->add_option("--seed", kg_seed)->capture_default_str();
    keygen->add_option("-o,--output", kg_output, "Key file (default: standard output)");

    // profile
    std::string pr_key;
    int pr_rule = -1;
    GridArgs pr_grid;
    auto* profile = app.add_subcommand("profile", "Depth, attractor count, rank, PEF cells and ratio");
    auto* pr_key_opt = profile->add_option("-k,--key", pr_key, "Key file");
    auto* pr_rule_opt = profile->add_option("--rule", pr_rule)->check(CLI::Range(0, 511));
    add_grid_options(profile, pr_grid, false);
    pr_key_opt->excludes(pr_rule_opt);

    // encompress / dencompress
    std::string ec_key, ec_in, ec_out;
    auto* enc = app.add_subcommand("encompress", "Compress and encrypt a PBM image");
    enc->add_option("-k,--key", ec_key)->required();
    enc->add_option("-i,--input", ec_in, "PBM image")->required();
    enc->add_option("-o,--output", ec_out, "Container file")->required();

    std::string dc_key, dc_in, dc_out;
    bool dc_p4 = false;
    auto* dec = app.add_subcommand("dencompress", "Decrypt and decompress a container to PBM");
    dec->add_option("-k,--key", dc_key)->required();
    dec->add_option("-i,--input", dc_in, "Container file")->required();
    dec->add_option("-o,--output", dc_out, "PBM image")->required();
    dec->add_flag("--p4", dc_p4, "Write packed P4 instead of ASCII P1");

    // rule-matrix / std
    int rm_rule = 0;
    GridArgs rm_grid;
    auto* rm = app.add_subcommand("rule-matrix", "Print the transformation matrix of a rule");
    rm->add_option("--rule", rm_rule)->required()->check(CLI::Range(0, 511));
    add_grid_options(rm, rm_grid);

    int sd_rule = 0;
    GridArgs sd_grid;
    auto* sd = app.add_subcommand("std", "Enumerate the state transition diagram");
    sd->add_option("--rule", sd_rule)->required()->check(CLI::Range(0, 511));
    add_grid_options(sd, sd_grid);

    // algebra / find-maca / verify
    GridArgs al_grid;
    bool al_table = false;
    auto* al = app.add_subcommand("algebra", "Close M_1..M_16 under the Boolean product and check axioms");
    add_grid_options(al, al_grid);
    al->add_flag("--table", al_table, "Also print the product table");

    GridArgs fm_grid;
    std::size_t fm_min_k = 1;
    auto* fm = app.add_subcommand("find-maca", "List MACA rules on a grid");
    add_grid_options(fm, fm_grid);
    fm->add_option("--min-k", fm_min_k)->capture_default_str();

    int vf_max_dims = 3;
    int vf_maca_cells = 9;
    std::uint64_t vf_seed = kDefaultSeed;
    auto* vf = app.add_subcommand("verify", "Audit the algebraic and MACA claims over a range of grids");
    vf->add_option("--max-dims", vf_max_dims, "Largest m and n for the algebra audit")
        ->check(CLI::Range(1, 6))
        ->capture_default_str();
    vf->add_option("--maca-cells", vf_maca_cells, "Largest m*n for the MACA sweep")
        ->check(CLI::Range(1, 16))
        ->capture_default_str();
    vf->add_option("--seed", vf_seed)->capture_default_str();

    std::vector<const char*> cargv;
    for (const auto& a : argv) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        result.exit_code = code == 0 ? kOk : kUsage;
        result.out = out.str();
        result.err = err.str();
        return result;
    }

    try {
        if (*keygen) {
            Key k;
            k.block_m = kg_block[0];
            k.block_n = kg_block[1];
            k.boundary = parse_boundary(kg_boundary);
            std::mt19937_64 rng(kg_seed);
            if (kg_rule >= 0) {
                k.rule = kg_rule;
            } else {
                auto candidates = find_maca(k.boundary, k.block_m, k.block_n, std::max<std::size_t>(kg_min_k, 2));
                // Rules that fix every state do not compress.
                std::erase_if(candidates, [](const MacaProfile& p) { return p.attractor_bits == p.spec.cells(); });
                if (candidates.empty()) throw InvalidKey("no MACA rule at this block size meets --min-k");
                k.rule = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)].spec.rule;
            }
            if (kg_enc.size() == 2) {
                k.enc_a = kg_enc[0];
                k.enc_b = kg_enc[1];
            } else {
                std::uniform_int_distribution<int> exp(0, 255);
                k.enc_a = exp(rng);
                k.enc_b = exp(rng);
            }
            std::string text = key_write(k);
            ParsedKey checked = key_parse(text);
            for (const auto& w : checked.warnings) err << "warning: " << w << "\n";
            if (kg_output.empty())
                out << text;
            else
                write_file(kg_output, std::vector<std::uint8_t>(text.begin(), text.end()));
        } else if (*profile) {
            MacaProfile p;
            if (!pr_key.empty()) {
                p = load_key(pr_key, err).profile;
            } else {
                if (pr_rule < 0 || pr_grid.dims.size() != 2) throw CLI::RequiredError("either --key or --rule with --dims");
                p = maca_profile({pr_rule, pr_grid.kind(), pr_grid.m(), pr_grid.n()});
            }
            out << profile_line(p) << "\n";
        } else if (*enc) {
            ParsedKey k = load_key(ec_key, err);
            PbmImage img = pbm_read(std::span<const std::uint8_t>(read_file(ec_in)));
            Encompressor codec(k.key);
            EncompressedContainer c = codec.encompress(img.pixels);
            write_file(ec_out, c.serialize());
            out << "encompressed " << img.rows() << "x" << img.cols() << " image: " << c.pef_len << " PEF bits in a "
                << c.p << "x" << c.q << " payload\n";
        } else if (*dec) {
            ParsedKey k = load_key(dc_key, err);
            auto bytes = read_file(dc_in);
            EncompressedContainer c = EncompressedContainer::parse(bytes);
            CAState img = Encompressor(k.key).dencompress(c);
            write_file(dc_out, pbm_write(PbmImage{img}, dc_p4 ? PbmForm::p4 : PbmForm::p1));
            out << "dencompressed " << img.m() << "x" << img.n() << " image\n";
        } else if (*rm) {
            out << rule_matrix({rm_rule, rm_grid.kind(), rm_grid.m(), rm_grid.n()}).dump();
        } else if (*sd) {
            auto d = build_std({sd_rule, sd_grid.kind(), sd_grid.m(), sd_grid.n()});
            out << "states=" << d.successor.size() << "\n";
            out << "attractors=" << join(d.attractors) << "\n";
            auto hist = d.depth_histogram();
            for (std::size_t k = 0; k < hist.size(); ++k) out << "depth " << k << ": " << hist[k] << "\n";
            out << "non-reachable=" << join(d.non_reachable) << "\n";
        } else if (*al) {
            ClosureSet c = close_basic(al_grid.kind(), al_grid.m(), al_grid.n());
            AxiomReport r = verify_axioms(c);
            out << format_report(r);
            for (std::size_t i = 0; i < c.order(); ++i) out << "element " << i << ": " << describe_element(c, i) << "\n";
            out << format_claims(check_claims(c, r, al_grid.kind(), al_grid.m(), al_grid.n()));
            if (al_table) out << "table:\n" << format_table(c);
        } else if (*fm) {
            auto found = find_maca(fm_grid.kind(), fm_grid.m(), fm_grid.n(), fm_min_k);
            out << "rule k depth rank ratio pef\n";
            for (const auto& p : found)
                out << p.spec.rule << " " << count_string(p.attractor_bits) << " " << p.depth << " " << p.rank << " "
                    << compression_ratio(p).to_string() << " " << cell_list(p) << "\n";
        } else if (*vf) {
            result.exit_code = verify_command(vf_max_dims, vf_maca_cells, vf_seed, out);
        }
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = kDataError;
    }

    result.out = out.str();
    result.err = err.str();
    return result;
}

}  // namespace caenc::cli
