#include <iostream>

#include <CLI11.hpp>

#include "qjac/cli.hpp"
#include "qjac/errors.hpp"

int main(int argc, char **argv)
{
    using namespace qjac;
    CLI::App app{"Exact q-series verification of theta Wronskians and odd-weight Jacobi forms"};

    std::string command, m, k, N, q_trunc, format = "json", output, dump, jacobi;
    unsigned jobs = 1, samples = 20;
    std::uint64_t seed = cli::RunConfig{}.seed;
    int part_i_r = 0;
    bool weak = false;

    app.add_option("command", command,
                   "verify-wronskian | verify-orders | verify-characters | verify-identities | classify | sweep")
        ->required();
    app.add_option("--m", m, "index range, e.g. 2..8 or 3,5,7");
    app.add_option("--k", k, "weight range (classify, sweep)");
    app.add_option("--N", N, "level range (classify, sweep)");
    app.add_option("--q-trunc", q_trunc, "q-adic truncation bound (rational)");
    app.add_option("--format", format, "json | csv | text");
    app.add_option("--output", output, "report file (default: stdout or $QJAC_OUTPUT_DIR)");
    app.add_option("--dump-series", dump, "directory for series text dumps");
    app.add_option("--jobs", jobs, "worker threads");
    app.add_option("--seed", seed, "sampling seed");
    app.add_option("--samples", samples, "random samples per m (verify-identities)");
    app.add_option("--jacobi-file", jacobi, "Jacobi coefficient file to ingest (verify-identities)");
    app.add_flag("--weak", weak, "accept weak Jacobi forms from --jacobi-file");
    auto *r_opt = app.add_option("--part-i-r", part_i_r, "explicit r for part (i)");

    CLI11_PARSE(app, argc, argv);

    cli::RunConfig cfg;
    try {
        cfg.command = cli::parse_command(command);
        cfg.format = cli::parse_format(format);
        if (!m.empty())
            cfg.m_values = cli::parse_range(m);
        if (!k.empty())
            cfg.k_values = cli::parse_range(k);
        if (!N.empty())
            cfg.N_values = cli::parse_range(N);
        if (!q_trunc.empty())
            cfg.q_trunc = parse_rational(q_trunc);
        if (!output.empty())
            cfg.output = output;
        if (!dump.empty())
            cfg.dump_series = dump;
        if (!jacobi.empty())
            cfg.jacobi_file = jacobi;
        if (*r_opt)
            cfg.part_i_r = part_i_r;
        cfg.jobs = jobs;
        cfg.seed = seed;
        cfg.samples = samples;
        cfg.weak = weak;
    }
    catch (const Error &e) {
        std::cerr << "{\"status\":\"FAIL\",\"invariant\":\"" << e.name() << "\",\"detail\":\"" << e.what()
                  << "\"}\n";
        return 2;
    }
    return cli::run(cfg, std::cout, std::cerr);
}
