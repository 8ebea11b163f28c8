// Batch front end: load a connection manifest, run one analysis command,
// print a text or JSON report.
//
// Exit status: 0 = verdict true / computation done, 1 = verdict false,
// 2 = input error (bad file, syntax, validation), 3 = internal error.

#include <szabo/commands.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

szabo::Options parse_options(const std::string& direction, const std::string& point,
                             const std::string& grid) {
    szabo::Options opt;
    if (!direction.empty()) opt.direction = direction;
    if (!point.empty()) {
        std::size_t start = 0;
        while (start <= point.size()) {
            std::size_t comma = point.find(',', start);
            std::string item = point.substr(start, comma - start);
            std::size_t eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw szabo::ValidationError("--point expects k=v,... pairs");
            opt.point_kv.emplace_back(item.substr(0, eq), item.substr(eq + 1));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    if (!grid.empty()) {
        std::size_t dots = grid.find("..");
        if (dots == std::string::npos)
            throw szabo::ValidationError("--grid expects lo..hi");
        try {
            int lo = std::stoi(grid.substr(0, dots));
            int hi = std::stoi(grid.substr(dots + 2));
            opt.grid = {lo, hi};
        } catch (const std::exception&) {
            throw szabo::ValidationError("--grid expects integer bounds lo..hi");
        }
    }
    return opt;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact symbolic analysis of affine connections"};
    std::string command, manifest_path, format = "text", direction, point, grid;

    std::vector<std::string> names;
    for (const auto& [n, c] : szabo::command_names()) names.push_back(n);
    app.add_option("command", command, "Analysis to run")
        ->required()
        ->check(CLI::IsMember(names));
    app.add_option("--manifest", manifest_path, "Connection manifest file")->required();
    app.add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--direction", direction, "Restrict to one named direction");
    app.add_option("--point", point, "Point bindings k=v,... overriding [point]");
    app.add_option("--grid", grid, "Parameter sweep lo..hi for classify commands");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version exit cleanly; bad usage is an input error
    }

    try {
        szabo::Options opt = parse_options(direction, point, grid);
        szabo::Manifest m = szabo::load_manifest(manifest_path);
        szabo::Report r = szabo::run_command(m, szabo::command_from_name(command), opt);
        std::cout << szabo::emit_report(
            r, format == "json" ? szabo::ReportFormat::Json : szabo::ReportFormat::Text);
        return szabo::exit_code_for(r);
    } catch (const szabo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
