#include "cfs/synthetic.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace cfs {
namespace {

constexpr double kPi = 3.141592653589793;

// splitmix64 stream with Box-Muller on top; self-contained so generated
// files can never drift with a standard-library update.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double normal() {
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    int range(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool chance(double p) { return uniform() < p; }
};

// Snapping to a power-of-two grid keeps every emitted value exactly
// representable, and keeps small-integer affine images of it exact too.
double grid10(double v) { return std::round(v * 1024.0) / 1024.0; }
double grid24(double v) { return std::round(v * 16777216.0) / 16777216.0; }

double clip(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

std::string format_sci(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
    return std::string(buf, res.ptr);
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out += ',';
        out += cells[i];
    }
    out += '\n';
}

} // namespace

SyntheticFile synthetic_ccrfds() {
    // 36 columns: Age, a block of 26 history columns that all contain the
    // missing marker somewhere, 8 more clean screening columns, then the
    // Biopsy label. 18 of 858 rows are positive.
    const std::vector<std::string> dirty_names = {
        "Number_of_sexual_partners",
        "First_sexual_intercourse",
        "Num_of_pregnancies",
        "Smokes",
        "Smokes_years",
        "Smokes_packs_year",
        "Hormonal_Contraceptives",
        "Hormonal_Contraceptives_years",
        "IUD",
        "IUD_years",
        "STDs",
        "STDs_number",
        "STDs_condylomatosis",
        "STDs_cervical_condylomatosis",
        "STDs_vaginal_condylomatosis",
        "STDs_vulvo_perineal_condylomatosis",
        "STDs_syphilis",
        "STDs_pelvic_inflammatory_disease",
        "STDs_genital_herpes",
        "STDs_molluscum_contagiosum",
        "STDs_AIDS",
        "STDs_HIV",
        "STDs_Hepatitis_B",
        "STDs_HPV",
        "STDs_Time_since_first_diagnosis",
        "STDs_Time_since_last_diagnosis",
    };
    const int n_rows = 858;

    SyntheticFile file;
    file.name = "ccrfds";
    file.load_options.label_column = "Biopsy";

    std::vector<std::string> header = {"Age"};
    header.insert(header.end(), dirty_names.begin(), dirty_names.end());
    for (const char* name : {"STDs_Number_of_diagnosis", "Dx_Cancer", "Dx_CIN", "Dx_HPV", "Dx",
                             "Hinselmann", "Schiller", "Citology", "Biopsy"}) {
        header.push_back(name);
    }
    append_row(file.csv_text, header);

    Rng rng(0x5eed0001);
    for (int i = 0; i < n_rows; ++i) {
        const bool positive = i % 47 == 13;
        std::vector<std::string> row;
        row.push_back(std::to_string(rng.range(13, 84)));
        for (std::size_t j = 0; j < dirty_names.size(); ++j) {
            // Every history column gets at least one guaranteed miss.
            const bool forced = i == static_cast<int>((j * 13 + 5) % n_rows);
            if (forced || rng.chance(0.06)) {
                row.push_back("?");
                continue;
            }
            switch (j % 4) {
                case 0: row.push_back(std::to_string(rng.range(0, 5))); break;
                case 1: row.push_back(std::to_string(rng.range(12, 30))); break;
                case 2: row.push_back(rng.chance(0.3) ? "1" : "0"); break;
                default:
                    row.push_back(format_double(grid10(clip(rng.normal() * 4.0 + 5.0, 0.0, 30.0))));
                    break;
            }
        }
        row.push_back(rng.chance(0.9) ? "0" : std::to_string(rng.range(1, 3)));
        if (positive) {
            row.push_back(rng.chance(0.20) ? "1" : "0"); // Dx_Cancer
            row.push_back(rng.chance(0.10) ? "1" : "0"); // Dx_CIN
            row.push_back(rng.chance(0.30) ? "1" : "0"); // Dx_HPV
            row.push_back(rng.chance(0.30) ? "1" : "0"); // Dx
            row.push_back(rng.chance(0.45) ? "1" : "0"); // Hinselmann
            row.push_back(rng.chance(0.80) ? "1" : "0"); // Schiller
            row.push_back(rng.chance(0.40) ? "1" : "0"); // Citology
            row.push_back("1");
        } else {
            row.push_back(rng.chance(0.015) ? "1" : "0");
            row.push_back(rng.chance(0.012) ? "1" : "0");
            row.push_back(rng.chance(0.015) ? "1" : "0");
            row.push_back(rng.chance(0.020) ? "1" : "0");
            row.push_back(rng.chance(0.030) ? "1" : "0");
            row.push_back(rng.chance(0.050) ? "1" : "0");
            row.push_back(rng.chance(0.035) ? "1" : "0");
            row.push_back("0");
        }
        append_row(file.csv_text, row);
    }
    return file;
}

SyntheticFile synthetic_bccds() {
    SyntheticFile file;
    file.name = "bccds";
    file.load_options.label_column = "Classification";
    append_row(file.csv_text, {"Age", "BMI", "Glucose", "Insulin", "HOMA", "Leptin",
                               "Adiponectin", "Resistin", "MCP.1", "Classification"});

    Rng rng(0x5eed0002);
    // 52 controls labeled "1", then 64 patients labeled "2". Blood-work
    // means shift between the groups; age and BMI barely do.
    for (int i = 0; i < 116; ++i) {
        const bool patient = i >= 52;
        const double glucose = patient ? clip(rng.normal() * 19.0 + 107.0, 70.0, 210.0)
                                       : clip(rng.normal() * 7.0 + 88.0, 60.0, 110.0);
        const double insulin = patient ? clip(rng.normal() * 7.0 + 12.5, 2.4, 58.0)
                                       : clip(rng.normal() * 2.8 + 6.5, 2.0, 30.0);
        const double homa =
            clip(glucose * insulin / 405.0 * (1.0 + 0.1 * rng.normal()), 0.3, 26.0);
        const double leptin = patient ? clip(rng.normal() * 14.0 + 30.0, 4.0, 91.0)
                                      : clip(rng.normal() * 11.0 + 24.0, 4.0, 91.0);
        const double adiponectin = patient ? clip(rng.normal() * 4.5 + 9.0, 1.6, 38.0)
                                           : clip(rng.normal() * 5.0 + 11.0, 1.6, 38.0);
        const double resistin = patient ? clip(rng.normal() * 8.0 + 17.5, 3.2, 82.0)
                                        : clip(rng.normal() * 4.5 + 11.0, 3.0, 42.0);
        const double mcp1 = patient ? clip(rng.normal() * 270.0 + 560.0, 45.0, 1700.0)
                                    : clip(rng.normal() * 220.0 + 470.0, 45.0, 1700.0);
        std::vector<std::string> row;
        row.push_back(std::to_string(static_cast<int>(clip(rng.normal() * 12.0 + 56.0, 24, 89))));
        row.push_back(format_double(grid10(clip(rng.normal() * 4.5 + 27.5, 18.0, 39.0))));
        row.push_back(format_double(grid10(glucose)));
        row.push_back(format_double(grid10(insulin)));
        row.push_back(format_double(grid10(homa)));
        row.push_back(format_double(grid10(leptin)));
        row.push_back(format_double(grid10(adiponectin)));
        row.push_back(format_double(grid10(resistin)));
        row.push_back(format_double(grid10(mcp1)));
        row.push_back(patient ? "2" : "1");
        append_row(file.csv_text, row);
    }
    return file;
}

SyntheticFile synthetic_btds() {
    SyntheticFile file;
    file.name = "btds";
    file.load_options.label_column = "Class";
    append_row(file.csv_text,
               {"I0", "PA500", "HFS", "DA", "Area", "A_DA", "Max_IP", "DR", "P", "Class"});

    // Impedance magnitudes differ per feature; every feature separates all
    // six tissue classes because (c + 2j) mod 6 permutes the class order per
    // feature.
    const struct {
        const char* label;
        int count;
    } classes[] = {{"car", 21}, {"fad", 15}, {"mas", 18}, {"gla", 16}, {"con", 14}, {"adi", 22}};
    const double scales[9] = {1.0, 0.01, 0.1, 50.0, 100.0, 1.0, 10.0, 5.0, 200.0};

    Rng rng(0x5eed0003);
    for (int c = 0; c < 6; ++c) {
        for (int i = 0; i < classes[c].count; ++i) {
            std::vector<std::string> row;
            for (int j = 0; j < 9; ++j) {
                const double center = 3.0 + 4.0 * ((c + 2 * j) % 6);
                row.push_back(format_double(grid10((center + 0.7 * rng.normal()) * scales[j])));
            }
            row.push_back(classes[c].label);
            append_row(file.csv_text, row);
        }
    }
    return file;
}

SyntheticFile synthetic_drdds() {
    SyntheticFile file;
    file.name = "drdds";
    file.load_options.has_header = false;
    file.load_options.label_column = "19";

    Rng rng(0x5eed0004);
    // 540 negatives then 611 positives. Columns: quality flag, pre-screening
    // flag, six lesion counts at decreasing confidence, eight area readings
    // in scientific notation, two geometry readings, a modulation flag, label.
    for (int i = 0; i < 1151; ++i) {
        const bool positive = i >= 540;
        std::vector<std::string> row;
        row.push_back(rng.chance(0.03) ? "0" : "1");
        row.push_back(rng.chance(positive ? 0.62 : 0.55) ? "1" : "0");
        const double base = positive ? rng.normal() * 14.0 + 45.0 : rng.normal() * 9.0 + 22.0;
        for (int level = 0; level < 6; ++level) {
            const double count =
                std::max(0.0, std::round(base * (1.0 - 0.12 * level) + rng.normal() * 3.0));
            row.push_back(std::to_string(static_cast<long>(count)));
        }
        const double magnitude = positive ? 70.0 : 40.0;
        for (int level = 0; level < 8; ++level) {
            double area = 0.0;
            if (!rng.chance(0.1)) {
                area = grid24(std::abs(rng.normal() * magnitude / 2.0 + magnitude) *
                              std::pow(2.0, -level));
            }
            row.push_back(format_sci(area));
        }
        row.push_back(format_double(grid10(rng.normal() * 0.02 + 0.52)));
        row.push_back(format_double(grid10(rng.normal() * 0.015 + 0.105)));
        row.push_back(rng.chance(0.35) ? "1" : "0");
        row.push_back(positive ? "1" : "0");
        append_row(file.csv_text, row);
    }
    return file;
}

std::vector<SyntheticFile> all_synthetic_datasets() {
    return {synthetic_ccrfds(), synthetic_bccds(), synthetic_btds(), synthetic_drdds()};
}

Dataset load_synthetic(const SyntheticFile& file) {
    std::istringstream in(file.csv_text);
    return clean_by_attribute_deletion(parse_csv(in, file.load_options, file.name));
}

} // namespace cfs
