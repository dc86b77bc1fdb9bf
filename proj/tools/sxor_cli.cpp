// sxor: encode files into shifted-XOR packets, decode them back, and inspect codes.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <sxor/sxor.hpp>

namespace fs = std::filesystem;
using namespace sxor;

namespace {

// Bad flags or arguments; exits with 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CodeOpts {
    std::optional<std::size_t> k, n;
    std::string g, kind = "sxor", x, matrix;
};

struct Opts {
    CodeOpts code;
    std::string input, out, meta, decoder = "map", format; // empty format: per-command default
    std::vector<std::string> packets;
    bool compare = false;
};

Sequence parse_x(const std::string& s) {
    Sequence x;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            x.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("--x expects comma-separated indices, got '" + s + "'");
        }
    }
    return x;
}

Poly2 parse_g(const std::string& s, const char* what) {
    try {
        return Poly2::from_hex(s);
    } catch (const ParseError&) {
        throw UsageError(std::string(what) + " is not a hex polynomial: '" + s + "'");
    }
}

// Built-in table entry for the smallest field holding N columns, unless
// SXOR_DEFAULT_G names a polynomial of that degree.
Poly2 default_g(std::size_t n) {
    const unsigned m = min_field_degree(n);
    if (const char* env = std::getenv("SXOR_DEFAULT_G"); env && *env) {
        const Poly2 g = parse_g(env, "SXOR_DEFAULT_G");
        if (g.degree() == m) return g;
    }
    return default_modulus(m);
}

Poly2 resolve_g(const CodeOpts& c) { return c.g.empty() ? default_g(*c.n) : parse_g(c.g, "--g"); }

GenMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return load_matrix(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void need_kn(const CodeOpts& c) {
    if (!c.k || !c.n) throw UsageError("--k and --n are required for this kind");
}

// Builds the code named on the command line. Everything but --matrix is
// validated without touching the filesystem.
GenMatrix resolve_code(const CodeOpts& c) {
    if (!c.matrix.empty()) return load_matrix_file(c.matrix);
    const auto kind = parse_kind(c.kind);
    if (!kind) throw UsageError("unknown --kind '" + c.kind + "'");
    try {
        switch (*kind) {
        case CodeKind::Sxor:
            need_kn(c);
            return build_sxor(*c.k, *c.n, resolve_g(c));
        case CodeKind::Systematic: {
            need_kn(c);
            const Poly2 g = resolve_g(c);
            const Sequence x = c.x.empty() ? best_systematic(*c.k, *c.n, g).x : parse_x(c.x);
            return build_systematic_sxor(*c.k, *c.n, g, x);
        }
        case CodeKind::ZdK3:
            if ((c.k && *c.k != 3) || (c.n && *c.n != 6)) throw UsageError("zd3 is fixed at K=3, N=6");
            return builtin_zd_k3();
        case CodeKind::User: break;
        }
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    throw UsageError("--kind user needs --matrix <file>");
}

ReportFormat report_format(const std::string& f, ReportFormat fallback = ReportFormat::Json) {
    if (f.empty()) return fallback;
    return f == "markdown" ? ReportFormat::Markdown : ReportFormat::Json;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error("cannot write " + out);
    f << text;
}

std::vector<std::uint8_t> read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot open " + p.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string meta_line(const GenMatrix& a, std::size_t len) {
    const CodeSpec& s = a.spec();
    std::string line = "len=" + std::to_string(len) + " k=" + std::to_string(s.k) + " n=" + std::to_string(s.n) +
                       " g=0x" + s.g.to_hex() + " kind=" + std::string(kind_name(s.kind));
    if (!s.x.empty()) line += " x=" + format_sequence(s.x);
    return line + "\n";
}

// --- encode / decode ---------------------------------------------------------

int cmd_encode(const Opts& o) {
    const GenMatrix a = resolve_code(o.code);
    const fs::path input(o.input);
    const auto data = read_file(input);
    if (data.empty()) throw UsageError("input file is empty; nothing to encode");

    const std::size_t k = a.k();
    const std::size_t chunk = (data.size() + k - 1) / k;
    const std::size_t L = 8 * chunk;
    std::vector<Poly2> sources;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<std::uint8_t> buf(chunk, 0);
        const std::size_t begin = std::min(j * chunk, data.size());
        const std::size_t end = std::min(begin + chunk, data.size());
        std::copy(data.begin() + static_cast<std::ptrdiff_t>(begin), data.begin() + static_cast<std::ptrdiff_t>(end),
                  buf.begin());
        sources.push_back(Poly2::from_bytes(buf, L));
    }
    const auto packets = encode(a, sources, L);

    const fs::path dir = o.out.empty() ? input.parent_path() : fs::path(o.out);
    if (!dir.empty()) fs::create_directories(dir);
    const std::string stem = input.stem().string();
    for (const Packet& p : packets) {
        std::ofstream f(dir / (stem + ".p" + std::to_string(p.index) + ".sxp"), std::ios::binary);
        if (!f) throw Error("cannot write packet " + std::to_string(p.index));
        write_packet(f, p);
    }
    std::ofstream meta(dir / (stem + ".sxmeta"));
    if (!meta) throw Error("cannot write " + (dir / (stem + ".sxmeta")).string());
    meta << meta_line(a, data.size());
    std::cerr << "wrote " << packets.size() << " packets (L=" << L << " bits) to "
              << (dir.empty() ? fs::path(".") : dir).string() << "\n";
    return 0;
}

std::map<std::string, std::string> read_meta(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw Error("cannot open " + p.string());
    std::map<std::string, std::string> kv;
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError(p.string() + ": expected key=value, got '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    for (const char* key : {"len", "k", "n", "g", "kind"})
        if (!kv.count(key)) throw ParseError(p.string() + ": missing '" + key + "'");
    return kv;
}

// <stem>.p<i>.sxp -> <stem>.sxmeta in the same directory.
fs::path meta_for(const fs::path& packet) {
    std::string name = packet.filename().string();
    if (name.size() > 4 && name.ends_with(".sxp")) name.resize(name.size() - 4);
    if (const auto dot = name.rfind(".p"); dot != std::string::npos) name.resize(dot);
    return packet.parent_path() / (name + ".sxmeta");
}

int cmd_decode(const Opts& o) {
    if (o.decoder != "map" && o.decoder != "zigzag") throw UsageError("--decoder must be map or zigzag");
    if (o.packets.empty()) throw UsageError("no packet files given");

    std::vector<Packet> packets;
    for (const auto& path : o.packets) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("cannot open " + path);
        try {
            packets.push_back(read_packet(in));
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        }
    }
    const CodeSpec spec = packets.front().spec;
    const std::size_t L = packets.front().source_len;
    for (std::size_t i = 1; i < packets.size(); ++i)
        if (!(packets[i].spec == spec) || packets[i].source_len != L)
            throw Error(o.packets[i] + ": header does not match " + o.packets.front());
    if (packets.size() < spec.k)
        throw UsageError("need " + std::to_string(spec.k) + " packets to decode, got " + std::to_string(packets.size()));
    packets.resize(spec.k);

    GenMatrix a = builtin_zd_k3();
    if (!o.code.matrix.empty()) {
        a = load_matrix_file(o.code.matrix);
        if (!(a.spec() == spec)) throw Error("--matrix does not describe the code the packets were encoded with");
    } else if (spec.kind == CodeKind::User) {
        throw UsageError("packets use a user matrix; pass it with --matrix");
    } else {
        a = build(spec);
    }

    const fs::path meta_path = o.meta.empty() ? meta_for(o.packets.front()) : fs::path(o.meta);
    const auto meta = read_meta(meta_path);
    std::size_t len = 0;
    try {
        len = std::stoull(meta.at("len"));
    } catch (const std::exception&) {
        throw ParseError(meta_path.string() + ": bad len");
    }
    const bool consistent = meta.at("k") == std::to_string(spec.k) && meta.at("n") == std::to_string(spec.n) &&
                            Poly2::from_hex(meta.at("g")) == spec.g && meta.at("kind") == kind_name(spec.kind) &&
                            (meta.count("x") ? meta.at("x") : "") == format_sequence(spec.x);
    if (!consistent) throw Error(meta_path.string() + " does not match the packet headers");
    const std::size_t chunk = L / 8;
    if (L % 8 != 0 || len > spec.k * chunk || len <= (chunk - 1) * spec.k)
        throw Error(meta_path.string() + ": length " + std::to_string(len) + " does not fit the packets");

    const auto sources = o.decoder == "zigzag" ? zigzag_decode(a, packets, L) : map_decode(a, packets, L);

    std::vector<std::uint8_t> data;
    data.reserve(spec.k * (L / 8));
    for (const Poly2& s : sources) {
        const auto bytes = s.to_bytes(L);
        data.insert(data.end(), bytes.begin(), bytes.end());
    }
    data.resize(len);
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Error("cannot write " + o.out);
    f.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    return 0;
}

// --- reports -------------------------------------------------------------------

std::string metrics_report(const GenMatrix& a, ReportFormat fmt) {
    const Metrics m = metrics(a);
    const CodeSpec& s = a.spec();
    if (fmt == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["kind"] = kind_name(s.kind);
        j["K"] = s.k;
        j["N"] = s.n;
        j["g"] = "0x" + s.g.to_hex();
        if (!s.x.empty()) j["x"] = s.x;
        j["overheads"] = a.overheads();
        j["l_max"] = m.l_max;
        j["l_sum"] = m.l_sum;
        j["alpha"] = m.alpha;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "# " << kind_name(s.kind) << " code, K=" << s.k << ", N=" << s.n;
    if (s.kind != CodeKind::ZdK3 && s.kind != CodeKind::User) os << ", g=0x" << s.g.to_hex();
    if (!s.x.empty()) os << ", x=(" << format_sequence(s.x) << ")";
    os << "\n\n| l_max | l_sum | alpha |\n|---|---|---|\n";
    os << "| " << m.l_max << " | " << m.l_sum << " | " << m.alpha << " |\n";
    return os.str();
}

int cmd_analyze(const Opts& o) {
    if (o.compare) {
        const std::size_t n = o.code.n.value_or(7);
        Poly2 g;
        try {
            g = o.code.g.empty() ? default_g(n) : parse_g(o.code.g, "--g");
            if (n < 3) throw InvalidArgument("--compare needs N >= 3");
            detail::field_for(2, n, g);
        } catch (const InvalidArgument& e) {
            throw UsageError(e.what());
        }
        emit(emit_comparison(compare_codes(n, g, 2, n - 1), report_format(o.format)), o.out);
        return 0;
    }
    emit(metrics_report(resolve_code(o.code), report_format(o.format)), o.out);
    return 0;
}

int cmd_classify(const Opts& o) {
    need_kn(o.code);
    ClassReport rep;
    try {
        rep = enumerate_classes(*o.code.k, *o.code.n, resolve_g(o.code));
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    emit(emit_report({rep}, report_format(o.format)), o.out);
    return 0;
}

int cmd_check(const Opts& o) {
    const GenMatrix a = resolve_code(o.code);
    const SuboptimalityReport rep = check_suboptimal(a);
    std::ostringstream os;
    if (report_format(o.format, ReportFormat::Markdown) == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["K"] = a.k();
        j["N"] = a.n();
        j["suboptimal"] = rep.suboptimal;
        j["failing"] = rep.failing;
        os << j.dump(2) << "\n";
    } else {
        os << "sub-optimal: " << (rep.suboptimal ? "true" : "false") << "\n";
        for (const auto& s : rep.failing) os << "singular minor: (" << format_sequence(s) << ")\n";
    }
    emit(os.str(), o.out);
    return rep.suboptimal ? 0 : 1;
}

int cmd_matrix_print(const Opts& o) {
    emit(to_text(resolve_code(o.code)), o.out);
    return 0;
}

int cmd_matrix_load(const Opts& o) {
    const GenMatrix a = load_matrix_file(o.input);
    emit(metrics_report(a, report_format(o.format)), o.out);
    return 0;
}

void add_code_opts(CLI::App* app, CodeOpts& c, bool with_matrix = true) {
    app->add_option("--k", c.k, "number of source packets K");
    app->add_option("--n", c.n, "number of encoded packets N");
    app->add_option("--g", c.g, "primitive polynomial as hex, e.g. 0xB");
    app->add_option("--kind", c.kind, "sxor, systematic, zd3 or user")
        ->check(CLI::IsMember({"sxor", "systematic", "zd3", "user"}));
    app->add_option("--x", c.x, "systematic positions, e.g. 1,3,4");
    if (with_matrix) app->add_option("--matrix", c.matrix, "generator matrix file");
}

void add_format(CLI::App* app, Opts& o) {
    app->add_option("--format", o.format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shift-and-XOR erasure codes: encode, decode and analyze."};
    app.require_subcommand(1);
    Opts o;

    auto* enc = app.add_subcommand("encode", "split a file into K sources and write N packet files");
    enc->add_option("input", o.input, "file to encode")->required();
    enc->add_option("--out", o.out, "output directory (default: next to the input)");
    add_code_opts(enc, o.code);

    auto* dec = app.add_subcommand("decode", "rebuild a file from K packet files");
    dec->add_option("packets", o.packets, "packet files")->required();
    dec->add_option("--out", o.out, "output file")->required();
    dec->add_option("--meta", o.meta, "sidecar file (default: <stem>.sxmeta next to the first packet)");
    dec->add_option("--decoder", o.decoder, "map or zigzag")->check(CLI::IsMember({"map", "zigzag"}));
    dec->add_option("--matrix", o.code.matrix, "generator matrix file for user codes");

    auto* ana = app.add_subcommand("analyze", "overhead and encoding complexity of a code");
    add_code_opts(ana, o.code);
    add_format(ana, o);
    ana->add_flag("--compare", o.compare, "compare SXOR and systematic SXOR codes for K = 2..N-1");
    ana->add_option("--out", o.out, "write the report to a file");

    auto* cls = app.add_subcommand("classify", "equivalence classes of systematic SXOR codes");
    cls->add_option("--k", o.code.k)->required();
    cls->add_option("--n", o.code.n)->required();
    cls->add_option("--g", o.code.g, "primitive polynomial as hex");
    add_format(cls, o);
    cls->add_option("--out", o.out, "write the report to a file");

    auto* chk = app.add_subcommand("check", "verify that every K x K minor is nonsingular");
    add_code_opts(chk, o.code);
    add_format(chk, o);
    chk->add_option("--out", o.out, "write the report to a file");

    auto* mat = app.add_subcommand("matrix", "generator matrix files");
    mat->require_subcommand(1);
    auto* mprint = mat->add_subcommand("print", "print a generator matrix in file format");
    add_code_opts(mprint, o.code);
    mprint->add_option("--out", o.out, "write to a file");
    auto* mload = mat->add_subcommand("load", "validate a matrix file and report its metrics");
    mload->add_option("file", o.input)->required();
    add_format(mload, o);
    mload->add_option("--out", o.out, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (enc->parsed()) return cmd_encode(o);
        if (dec->parsed()) return cmd_decode(o);
        if (ana->parsed()) return cmd_analyze(o);
        if (cls->parsed()) return cmd_classify(o);
        if (chk->parsed()) return cmd_check(o);
        if (mprint->parsed()) return cmd_matrix_print(o);
        if (mload->parsed()) return cmd_matrix_load(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Stuck& e) {
        std::cerr << "zigzag decoding stuck after " << e.resolved() << " of " << e.total() << " bits\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
