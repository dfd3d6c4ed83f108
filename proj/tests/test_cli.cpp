// End-to-end checks against the installed CLI binary (path in argv[1]).
// Exits with the number of failed checks.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

int failures = 0;

#define CHECK_MSG(cond, msg)                                                   \
    do {                                                                       \
        if (!(cond)) {                                                         \
            std::fprintf(stderr, "FAIL %s:%d %s\n", __FILE__, __LINE__, msg);  \
            ++failures;                                                        \
        }                                                                      \
    } while (0)

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const char *path) {
    std::string data;
    if (FILE *f = std::fopen(path, "rb")) {
        char buf[4096];
        size_t n = 0;
        while ((n = std::fread(buf, 1, sizeof buf, f)) > 0)
            data.append(buf, n);
        std::fclose(f);
    }
    return data;
}

RunResult run(const std::string &cli, const std::string &args) {
    const std::string cmd =
        "\"" + cli + "\" " + args + " >cli_stdout.tmp 2>cli_stderr.tmp";
    RunResult r;
    const int raw = std::system(cmd.c_str());
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp("cli_stdout.tmp");
    r.err = slurp("cli_stderr.tmp");
    return r;
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int col(const std::string &name) const {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return static_cast<int>(i);
        return -1;
    }
    double num(size_t row, const std::string &name) const {
        const int c = col(name);
        if (c < 0 || row >= rows.size())
            return std::nan("");
        return std::strtod(rows[row][static_cast<size_t>(c)].c_str(), nullptr);
    }
    const std::string &str(size_t row, const std::string &name) const {
        static const std::string empty;
        const int c = col(name);
        if (c < 0 || row >= rows.size())
            return empty;
        return rows[row][static_cast<size_t>(c)];
    }
};

Csv parse_csv(const std::string &text) {
    Csv csv;
    std::vector<std::string> *target = nullptr;
    std::string field;
    std::vector<std::string> line;
    for (char ch : text) {
        if (ch == ',') {
            line.push_back(field);
            field.clear();
        } else if (ch == '\n') {
            line.push_back(field);
            field.clear();
            if (csv.header.empty())
                csv.header = line;
            else
                csv.rows.push_back(line);
            line.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    (void)target;
    return csv;
}

const double kPhiPin = 0.036119356509677313;

} // namespace

int main(int argc, char **argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-cli>\n", argv[0]);
        return 99;
    }
    const std::string cli = argv[1];
    const std::string pinned = "--angle2 0.52359877559829893";

    { // solve: pinned scene, all three routes agree
        RunResult r = run(cli, "solve " + pinned);
        CHECK_MSG(r.code == 0, "solve exit code");
        Csv csv = parse_csv(r.out);
        CHECK_MSG(csv.rows.size() == 1, "solve row count");
        CHECK_MSG(std::fabs(csv.num(0, "phi_M_rad") - kPhiPin) <= 1e-9,
                  "solve phi_M_rad");
        CHECK_MSG(csv.num(0, "converged") == 1.0, "solve converged");
        CHECK_MSG(std::fabs(csv.num(0, "delta_quartic_fixed_point")) <= 1e-10,
                  "solve quartic vs fixed point");
        CHECK_MSG(std::fabs(csv.num(0, "delta_oracle_fixed_point")) <= 1e-9,
                  "solve oracle vs fixed point");
        CHECK_MSG(std::fabs(csv.num(0, "mismatch_fixed_point")) <= 1e-10,
                  "solve mismatch fixed point");
        CHECK_MSG(std::fabs(csv.num(0, "mismatch_quartic")) <= 1e-10,
                  "solve mismatch quartic");
        CHECK_MSG(std::fabs(csv.num(0, "residual_quartic")) <= 1e-11,
                  "solve quartic residual");
        CHECK_MSG(csv.num(0, "grazing") == 0.0, "solve grazing flag");
        CHECK_MSG(csv.num(0, "swapped") == 0.0, "solve swapped flag");
        CHECK_MSG(std::fabs(csv.num(0, "phi_M_deg") -
                            kPhiPin * 57.295779513082323) <= 1e-9,
                  "solve phi_M_deg");
    }

    { // solve: symmetric scene collapses to the bisector
        RunResult r = run(cli, "solve --ra 2 --rb 2 --angle2 1.0");
        CHECK_MSG(r.code == 0, "symmetric solve exit code");
        Csv csv = parse_csv(r.out);
        CHECK_MSG(std::fabs(csv.num(0, "phi_M_rad")) <= 1e-12,
                  "symmetric phi_M");
        CHECK_MSG(csv.num(0, "rate") == 0.0, "symmetric rate");
    }

    { // validation failures map to exit 2 with the status name on stderr
        RunResult r = run(cli, "solve --ra 0.5 " + pinned);
        CHECK_MSG(r.code == 2, "focal inside exit code");
        CHECK_MSG(r.err.find("FocalInsideSphere") != std::string::npos,
                  "focal inside stderr");
        r = run(cli, "solve --angle2 3.0");
        CHECK_MSG(r.code == 2, "theta out of range exit code");
        CHECK_MSG(r.err.find("ThetaOutOfRange") != std::string::npos,
                  "theta out of range stderr");
        r = run(cli, "solve --tol 0 " + pinned);
        CHECK_MSG(r.code == 2, "bad tol exit code");
        r = run(cli, "solve --nope");
        CHECK_MSG(r.code == 2, "unknown flag exit code");
        r = run(cli, "");
        CHECK_MSG(r.code == 2, "missing subcommand exit code");
    }

    { // roots: full classified table
        RunResult r = run(cli, "roots " + pinned);
        CHECK_MSG(r.code == 0, "roots exit code");
        Csv csv = parse_csv(r.out);
        CHECK_MSG(csv.rows.size() == 4, "roots row count");
        int physical_count = 0;
        size_t physical_row = 0;
        for (size_t i = 0; i < csv.rows.size(); ++i) {
            if (csv.num(i, "physical") == 1.0) {
                ++physical_count;
                physical_row = i;
            }
            CHECK_MSG(std::fabs(csv.num(i, "residual")) <= 1e-11,
                      "roots residual");
        }
        CHECK_MSG(physical_count == 1, "roots unique physical row");
        CHECK_MSG(std::fabs(csv.num(physical_row, "phi") - kPhiPin) <= 1e-6,
                  "roots physical phi");
        CHECK_MSG(csv.str(physical_row, "kind") == "External",
                  "roots physical kind");
        CHECK_MSG(csv.str(0, "kind") == "InternalExternal", "roots kind[0]");
        CHECK_MSG(csv.str(1, "kind") == "Internal", "roots kind[1]");
        CHECK_MSG(csv.str(3, "kind") == "ExternalInternal", "roots kind[3]");
    }

    { // roots: raw coefficient mode
        RunResult r = run(cli, "roots --coeffs 1,0,-5,0,4");
        CHECK_MSG(r.code == 0, "coeffs exit code");
        Csv csv = parse_csv(r.out);
        CHECK_MSG(csv.rows.size() == 4, "coeffs row count");
        const double expect[4] = {-2.0, -1.0, 1.0, 2.0};
        for (size_t i = 0; i < 4; ++i) {
            CHECK_MSG(std::fabs(csv.num(i, "t") - expect[i]) <= 1e-9,
                      "coeffs root value");
            CHECK_MSG(std::fabs(csv.num(i, "residual")) <= 1e-12,
                      "coeffs residual");
        }
        CHECK_MSG(csv.col("kind") == -1, "coeffs has no kind column");
        r = run(cli, "roots --coeffs 1,2,3");
        CHECK_MSG(r.code == 2, "short coeffs exit code");
        r = run(cli, "roots --coeffs 1,0,0,0,1");
        CHECK_MSG(r.code == 3, "complex roots exit code");
    }

    { // sweep-theta: angle grid up to tangency
        RunResult r = run(cli, "sweep-theta --grid 16");
        CHECK_MSG(r.code == 0, "sweep exit code");
        Csv csv = parse_csv(r.out);
        CHECK_MSG(csv.rows.size() == 16, "sweep row count");
        CHECK_MSG(std::fabs(csv.num(0, "theta2")) == 0.0, "sweep starts at 0");
        CHECK_MSG(std::fabs(csv.num(15, "theta2") - 2.2781569685373726) <=
                      1e-9,
                  "sweep ends at the tangency bound");
        CHECK_MSG(std::fabs(csv.num(0, "phi_M")) <= 1e-12, "sweep phi at 0");
        double prev = -1.0;
        bool ascending = true, positive = true;
        for (size_t i = 0; i < csv.rows.size(); ++i) {
            const double t2 = csv.num(i, "theta2");
            ascending = ascending && t2 > prev;
            prev = t2;
            if (i > 0)
                positive = positive && csv.num(i, "phi_M") > 0.0;
        }
        CHECK_MSG(ascending, "sweep theta2 ascending");
        CHECK_MSG(positive, "sweep phi_M positive");
        r = run(cli, "sweep-theta --grid 16 --verify");
        CHECK_MSG(r.code == 0, "sweep verify exit code");
    }

    { // iterate-map: the update map against the diagonal
        RunResult r = run(cli, "iterate-map " + pinned + " --grid 64");
        CHECK_MSG(r.code == 0, "map exit code");
        Csv csv = parse_csv(r.out);
        CHECK_MSG(csv.rows.size() == 64, "map row count");
        CHECK_MSG(csv.num(0, "phi") == 0.0, "map starts at 0");
        CHECK_MSG(std::fabs(csv.num(0, "f_phi") - 0.031962130134911698) <=
                      1e-9,
                  "map f(0)");
        int sign_changes = 0;
        for (size_t i = 1; i < csv.rows.size(); ++i) {
            const double a = csv.num(i - 1, "diagonal_gap");
            const double b = csv.num(i, "diagonal_gap");
            if ((a > 0 && b < 0) || (a < 0 && b > 0))
                ++sign_changes;
        }
        CHECK_MSG(sign_changes == 1, "map crosses the diagonal once");
        r = run(cli, "iterate-map " + pinned + " --grid 1");
        CHECK_MSG(r.code == 2, "map grid too small");
    }

    { // error-sweep over the starting angle
        RunResult r = run(cli, "error-sweep " + pinned);
        CHECK_MSG(r.code == 0, "error sweep exit code");
        Csv csv = parse_csv(r.out);
        CHECK_MSG(csv.rows.size() == 256, "error sweep row count");
        CHECK_MSG(csv.num(0, "phi0") == 0.0, "error sweep starts at 0");
        CHECK_MSG(std::fabs(csv.num(0, "rel_error") - 0.11509691136528927) <=
                      1e-6,
                  "error sweep rel error at 0");
        CHECK_MSG(std::fabs(csv.num(0, "abs_error") -
                            0.0041572263747656135) <= 1e-6,
                  "error sweep abs error at 0");
        CHECK_MSG(csv.num(0, "absolute_mode") == 0.0,
                  "error sweep absolute flag");
        CHECK_MSG(std::fabs(csv.num(0, "area_form_printed") -
                            0.12733188414668406) <= 1e-6,
                  "error sweep printed form");
        CHECK_MSG(std::fabs(csv.num(0, "area_form_alt") -
                            0.063924260269823396) <= 1e-6,
                  "error sweep alternate form");
    }

    { // error-sweep over the scene angle
        RunResult r = run(cli, "error-sweep --sweep theta2 --grid 16");
        CHECK_MSG(r.code == 0, "theta error sweep exit code");
        Csv csv = parse_csv(r.out);
        CHECK_MSG(csv.rows.size() == 16, "theta error sweep row count");
        CHECK_MSG(csv.num(0, "absolute_mode") == 1.0,
                  "theta sweep bottom row absolute");
        CHECK_MSG(csv.num(0, "rel_error") < 1e-6,
                  "theta sweep bottom row error");
        double prev = 0.0;
        bool ascending = true;
        for (size_t i = 0; i < csv.rows.size(); ++i) {
            const double t2 = csv.num(i, "theta2");
            ascending = ascending && t2 > prev;
            prev = t2;
            if (csv.num(i, "absolute_mode") == 0.0)
                CHECK_MSG(csv.num(i, "rel_error") < 0.5,
                          "theta sweep plateau stays below the contraction");
        }
        CHECK_MSG(ascending, "theta sweep ascending");
    }

    { // --degrees converts inputs only
        RunResult deg = run(cli, "solve --angle2 30 --degrees");
        RunResult rad = run(cli, "solve " + pinned);
        CHECK_MSG(deg.code == 0, "degrees exit code");
        Csv a = parse_csv(deg.out), b = parse_csv(rad.out);
        CHECK_MSG(std::fabs(a.num(0, "phi_M_rad") - b.num(0, "phi_M_rad")) <=
                      1e-12,
                  "degrees matches radians");
    }

    { // JSON mirrors the CSV values
        RunResult r = run(cli, "solve " + pinned + " --format json");
        CHECK_MSG(r.code == 0, "json exit code");
        CHECK_MSG(!r.out.empty() && r.out[0] == '{', "json starts with brace");
        const char *key = "\"phi_M_rad\": [";
        const size_t pos = r.out.find(key);
        CHECK_MSG(pos != std::string::npos, "json has phi_M_rad");
        if (pos != std::string::npos) {
            const double v =
                std::strtod(r.out.c_str() + pos + std::strlen(key), nullptr);
            CHECK_MSG(std::fabs(v - kPhiPin) <= 1e-9, "json phi value");
        }
    }

    { // --out writes the same bytes that stdout carries
        RunResult direct = run(cli, "solve " + pinned);
        RunResult filed = run(cli, "solve " + pinned + " --out cli_file.tmp");
        CHECK_MSG(filed.code == 0, "out-file exit code");
        CHECK_MSG(filed.out.empty(), "out-file leaves stdout empty");
        CHECK_MSG(slurp("cli_file.tmp") == direct.out, "out-file bytes");
        std::remove("cli_file.tmp");
    }

    { // --verify re-checks the answer against the oracle
        RunResult r = run(cli, "solve " + pinned + " --verify");
        CHECK_MSG(r.code == 0, "solve verify exit code");
        r = run(cli, "roots " + pinned + " --verify");
        CHECK_MSG(r.code == 0, "roots verify exit code");
    }

    std::remove("cli_stdout.tmp");
    std::remove("cli_stderr.tmp");
    if (failures == 0)
        std::printf("all cli checks passed\n");
    else
        std::printf("%d cli check(s) failed\n", failures);
    return failures;
}
