#include <doctest.h>

#include <random>
#include <string>

#include "caenc/keyfile.hpp"
#include "caenc/pbm.hpp"

using namespace caenc;

namespace {

std::string as_text(const std::vector<std::uint8_t>& bytes) { return {bytes.begin(), bytes.end()}; }

PbmImage image(const std::vector<std::string>& rows) { return PbmImage{CAState::from_rows(rows)}; }

const char* kKey69Text = "version 1\nblock 2 2\nboundary null\nrule 69\nenc 1 0\n";

}  // namespace

TEST_CASE("pbm_read examples") {
    CHECK(pbm_read("P1\n2 2\n0 1\n1 0\n").pixels == CAState::from_rows({"01", "10"}));
    std::vector<std::uint8_t> p4 = {'P', '4', '\n', '2', ' ', '2', '\n', 0x40, 0x80};
    CHECK(pbm_read(p4).pixels == CAState::from_rows({"01", "10"}));

    // Width comes before height; comments and loose whitespace are allowed.
    auto wide = pbm_read("P1 # c\n3\n# another\n 1\n101");
    CHECK(wide.rows() == 1);
    CHECK(wide.cols() == 3);
    CHECK(wide.pixels == CAState::from_rows({"101"}));

    try {
        pbm_read("P5\n1 1\n255\n\x01");
        FAIL("P5 accepted");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("unsupported format") != std::string::npos);
    }
    CHECK_THROWS_AS(pbm_read("P1\n2 2\n0 1\n1\n"), FormatError);
    CHECK_THROWS_AS(pbm_read("P1\n2\n"), FormatError);
    CHECK_THROWS_AS(pbm_read("P1\n0 2\n"), FormatError);
    CHECK_THROWS_AS(pbm_read("P1\n1 1\n2\n"), FormatError);
    CHECK_THROWS_AS(pbm_read(std::vector<std::uint8_t>{'P', '4', '\n', '9', ' ', '2', '\n', 0x00}), FormatError);
    CHECK_THROWS_AS(pbm_read(""), FormatError);
}

TEST_CASE("pbm_write examples") {
    CHECK(as_text(pbm_write(image({"1"}), PbmForm::p1)) == "P1\n1 1\n1\n");
    CHECK(as_text(pbm_write(image({"01", "10"}), PbmForm::p1)) == "P1\n2 2\n0 1\n1 0\n");
    auto p4 = pbm_write(image({"01", "10"}), PbmForm::p4);
    CHECK(p4 == std::vector<std::uint8_t>{'P', '4', '\n', '2', ' ', '2', '\n', 0x40, 0x80});
    std::string canonical = "P1\n3 2\n1 0 1\n0 0 1\n";
    CHECK(as_text(pbm_write(pbm_read(canonical), PbmForm::p1)) == canonical);
}

TEST_CASE("property: read after write is identity") {
    for (std::uint64_t v = 0; v < 16; ++v)
        for (PbmForm f : {PbmForm::p1, PbmForm::p4}) {
            PbmImage img{CAState::from_decimal(2, 2, v)};
            CHECK(pbm_read(pbm_write(img, f)).pixels == img.pixels);
        }
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 300; ++trial) {
        int m = 1 + static_cast<int>(rng() % 8), n = 1 + static_cast<int>(rng() % 8);
        CAState x(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                if (rng() & 1) x.set(i, j);
        for (PbmForm f : {PbmForm::p1, PbmForm::p4}) CHECK(pbm_read(pbm_write(PbmImage{x}, f)).pixels == x);
    }
}

TEST_CASE("key_parse examples") {
    auto k = key_parse(kKey69Text);
    CHECK(k.key == Key{2, 2, Boundary::null, 69, 1, 0});
    CHECK(k.profile.attractor_count() == 4);
    CHECK(k.warnings.empty());
    CHECK(key_write(k.key) == kKey69Text);

    auto ident = key_parse("version 1\nblock 2 2\nboundary null\nrule 1\nenc 0 0\n");
    CHECK(ident.profile.attractor_count() == 16);
    CHECK(ident.warnings.size() == 1);

    CHECK_THROWS_AS(key_parse("version 1\nblock 2 2\nboundary null\nrule 512\nenc 1 0\n"), FormatError);
    CHECK_THROWS_AS(key_parse("version 1\nblock 2 2\nboundary null\nrule 69\n"), FormatError);
    CHECK_THROWS_AS(key_parse(std::string(kKey69Text) + "rule 69\n"), FormatError);
    CHECK_THROWS_AS(key_parse(std::string(kKey69Text) + "colour blue\n"), FormatError);
    CHECK_THROWS_AS(key_parse("version 2\nblock 2 2\nboundary null\nrule 69\nenc 1 0\n"), FormatError);
    CHECK_THROWS_AS(key_parse("version 1\nblock 2 2\nboundary mirror\nrule 69\nenc 1 0\n"), FormatError);
    CHECK_THROWS_AS(key_parse("version 1\nblock 0 2\nboundary null\nrule 69\nenc 1 0\n"), FormatError);
    CHECK_NOTHROW(key_parse("\nversion 1\n\nblock 2 2\nboundary null\nrule 69\nenc 1 0\n\n"));

    try {
        key_parse("version 1\nblock 2 2\nboundary periodic\nrule 2\nenc 0 0\n");
        FAIL("non-MACA rule accepted");
    } catch (const InvalidKey& e) {
        CHECK(std::string(e.what()).find("nearby usable rules") != std::string::npos);
    }
}

TEST_CASE("property: key write then parse is identity") {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 100; ++trial) {
        auto usable = find_maca(trial % 2 ? Boundary::periodic : Boundary::null, 2, 2, 2);
        const auto& p = usable[rng() % usable.size()];
        Key key{2, 2, p.spec.boundary, p.spec.rule, static_cast<int>(rng() % 65536), static_cast<int>(rng() % 65536)};
        CHECK(key_parse(key_write(key)).key == key);
    }
}
