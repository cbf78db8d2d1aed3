#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bench.hpp"
#include "translate.hpp"
#include "verify.hpp"

namespace {

using namespace mpole::cli;

int do_bench(const bench_options& opt, const std::string& precision,
             const std::string& csv_path) {
    const auto records = precision == "single" ? run_bench<float>(opt)
                                               : run_bench<double>(opt);
    if (csv_path.empty() || csv_path == "-") {
        write_csv(std::cout, records);
    } else {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot open " + csv_path);
        write_csv(out, records);
    }
    return 0;
}

int do_verify(const verify_options& opt, const std::string& precision) {
    if (opt.dump_tables) {
        if (precision == "single")
            dump_tables<float>(std::cout, opt);
        else
            dump_tables<double>(std::cout, opt);
        return 0;
    }
    const auto results = precision == "single"
                             ? run_verify<float>(opt, std::cout)
                             : run_verify<double>(opt, std::cout);
    for (const auto& r : results)
        if (!r.passed) return 1;
    return 0;
}

template <typename Options, void (*Run)(const Options&, std::istream&,
                                        std::ostream&)>
int with_streams(const Options& opt, const std::string& in_path,
                 const std::string& out_path) {
    std::ifstream fin;
    std::istream* in = &std::cin;
    if (!in_path.empty() && in_path != "-") {
        fin.open(in_path);
        if (!fin) throw std::runtime_error("cannot open " + in_path);
        in = &fin;
    }
    std::ofstream fout;
    std::ostream* out = &std::cout;
    if (!out_path.empty() && out_path != "-") {
        fout.open(out_path);
        if (!fout) throw std::runtime_error("cannot open " + out_path);
        out = &fout;
    }
    Run(opt, *in, *out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Batched solid-harmonic translations (M2L, M2M, L2L): benchmark, "
        "verification and file translation tool"};
    app.require_subcommand(1);

    std::string precision = "double";

    auto add_precision = [&](CLI::App* cmd) {
        cmd->add_option("--precision", precision,
                        "Arithmetic precision (single|double)")
            ->check(CLI::IsMember({"single", "double"}))
            ->capture_default_str();
    };

    // bench
    bench_options bopt;
    std::string csv_path;
    auto* bench = app.add_subcommand(
        "bench", "Time the optimized and naive M2L kernels, emit CSV");
    bench->add_option("--pmin", bopt.pmin, "Smallest order")
        ->capture_default_str();
    bench->add_option("--pmax", bopt.pmax, "Largest order")
        ->capture_default_str();
    bench->add_option("--batch", bopt.batch,
                      "Translations per repetition (default: batch width)");
    std::string reps = "auto";
    bench->add_option("--reps", reps,
                      "Repetitions per point, or 'auto' for >= 50 ms each")
        ->capture_default_str();
    bench->add_option("--kernel", bopt.kernel,
                      "Which kernels to time (optimized|naive|both)")
        ->check(CLI::IsMember({"optimized", "naive", "both"}))
        ->capture_default_str();
    bench->add_option("--csv", csv_path, "CSV output path ('-' for stdout)");
    bench->add_option("--seed", bopt.seed, "Random seed")
        ->capture_default_str();
    bench->add_option("--mu", bopt.mu, "Block height override");
    bench->add_option("--nu", bopt.nu, "Batch width override");
    add_precision(bench);

    // verify
    verify_options vopt;
    auto* verify = app.add_subcommand(
        "verify", "Run the oracle and invariant suites");
    verify->add_option("--pmax", vopt.pmax,
                       "Largest order to verify (default 20 double, 8 single)");
    verify->add_option("--seed", vopt.seed, "Random seed")
        ->capture_default_str();
    verify->add_option("--mu", vopt.mu, "Block height override");
    verify->add_option("--nu", vopt.nu, "Batch width override");
    verify->add_flag("--dump-tables", vopt.dump_tables,
                     "Print dense and packed swap tables instead");
    verify->add_option("--order", vopt.order,
                       "With --dump-tables: dump only this row");
    verify->add_option("--charges", vopt.charges_path,
                       "Charge file for the potential suite (x y z q lines)");
    add_precision(verify);

    // translate
    translate_options topt;
    std::string in_path, out_path;
    auto* translate = app.add_subcommand(
        "translate", "Apply a translation to every solid in a file");
    translate->add_option("--op", topt.op, "Operation (m2l|m2m|l2l)")
        ->check(CLI::IsMember({"m2l", "m2m", "l2l"}))
        ->capture_default_str();
    translate
        ->add_option("--shift", topt.shift,
                     "Shift vector from source to target centre")
        ->expected(3)
        ->required();
    translate->add_option("--pout", topt.pout,
                          "Output order (default: input order)");
    translate->add_option("--in", in_path, "Input path (default: stdin)");
    translate->add_option("--out", out_path, "Output path (default: stdout)");
    translate->add_option("--mu", topt.mu, "Block height override");
    translate->add_option("--nu", topt.nu, "Batch width override");
    add_precision(translate);

    // p2m
    p2m_options popt;
    std::string p2m_in, p2m_out;
    auto* p2m = app.add_subcommand(
        "p2m", "Expand a point-charge file into a multipole solid");
    p2m->add_option("--charges", p2m_in,
                    "Charge file, one 'x y z q' line per charge "
                    "(default: stdin)");
    p2m->add_option("--center", popt.center, "Expansion centre")
        ->expected(3)
        ->required();
    p2m->add_option("--order", popt.order, "Expansion order")
        ->capture_default_str();
    p2m->add_option("--out", p2m_out, "Output path (default: stdout)");
    add_precision(p2m);

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench->parsed()) {
            if (reps == "auto") {
                bopt.reps = 0;
            } else {
                try {
                    bopt.reps = std::stoll(reps);
                } catch (const std::exception&) {
                    throw std::invalid_argument(
                        "bench: --reps takes a count or 'auto'");
                }
                if (bopt.reps < 1)
                    throw std::invalid_argument("bench: --reps must be >= 1");
            }
            return do_bench(bopt, precision, csv_path);
        }
        if (verify->parsed()) return do_verify(vopt, precision);
        if (translate->parsed()) {
            return precision == "single"
                       ? with_streams<translate_options, run_translate<float>>(
                             topt, in_path, out_path)
                       : with_streams<translate_options,
                                      run_translate<double>>(topt, in_path,
                                                             out_path);
        }
        if (p2m->parsed()) {
            return precision == "single"
                       ? with_streams<p2m_options, run_p2m<float>>(
                             popt, p2m_in, p2m_out)
                       : with_streams<p2m_options, run_p2m<double>>(
                             popt, p2m_in, p2m_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
