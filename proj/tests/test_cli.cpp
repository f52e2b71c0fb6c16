#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace entb;
using namespace entb::test;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run entb_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

struct TempDir {
  fs::path path = fs::temp_directory_path() / "entb_test_cli";
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("info on a family") {
  const Run r = entb_cli({"info", "--family", "bell:M=2"});
  CHECK(r.code == cli::kOk);
  CHECK(contains(r.out, "dims: 2x2"));
  CHECK(contains(r.out, "caf_bound: raw 1 clamped 1"));
  CHECK(contains(r.out, "best: 1\n"));

  const Run tiles = entb_cli({"info", "--family", "tiles_upb", "--loo", "standard"});
  CHECK(tiles.code == cli::kOk);
  CHECK(contains(tiles.out, "ppt_value: 1 [not detected]"));
  CHECK(contains(tiles.out, "ccnr_value: 1.08741246 [entangled]"));
  CHECK(contains(tiles.out, "caf_bound: raw 0.0504676101"));
}

TEST_CASE("info with every LOO strategy") {
  for (const char* loo : {"standard", "lemma1", "lemma1-psi", "isotropic"}) {
    CAPTURE(loo);
    const Run r = entb_cli({"info", "--family", "isotropic:M=2,F=0.8", "--loo", loo});
    CHECK(r.code == cli::kOk);
  }
  const Run psi = entb_cli({"info", "--family", "figure1:p=0.5", "--loo", "lemma1-psi"});
  CHECK(psi.code == cli::kOk);
  CHECK(contains(psi.out, "lurs_bound: raw 0.25 clamped 0.25"));

  const Run opt = entb_cli({"info", "--family", "bell:M=2", "--loo", "optimize", "--restarts", "2", "--steps", "20"});
  CHECK(opt.code == cli::kOk);
  CHECK(contains(opt.out, "note: lurs: optimizer over 2 restarts"));
}

TEST_CASE("usage errors exit 1") {
  CHECK(entb_cli({}).code == cli::kUsage);
  CHECK(entb_cli({"bogus"}).code == cli::kUsage);
  CHECK(entb_cli({"info"}).code == cli::kUsage);
  CHECK(entb_cli({"info", "--family", "bell:M=2", "--state", "x.json"}).code == cli::kUsage);
  CHECK(entb_cli({"info", "--family", "bell:M=2", "--loo", "nope"}).code == cli::kUsage);
  CHECK(entb_cli({"info", "--family", "tiles_upb", "--loo", "lemma1-psi"}).code == cli::kUsage);
  CHECK(entb_cli({"info", "--family", "werner"}).code == cli::kUsage);
  CHECK(entb_cli({"info", "--state", "/nonexistent.json"}).code == cli::kUsage);
  CHECK(entb_cli({"sweep", "--family", "figure1"}).code == cli::kUsage);
  CHECK(entb_cli({"sweep", "--family", "figure1", "--param", "q"}).code == cli::kUsage);
  CHECK(entb_cli({"sweep", "--family", "figure1", "--param", "p", "--steps", "1"}).code == cli::kUsage);
  CHECK(entb_cli({"optimize", "--family", "bell:M=2", "--decay", "2"}).code == cli::kUsage);
  CHECK(entb_cli({"--help"}).code == cli::kOk);
}

TEST_CASE("validate") {
  TempDir tmp;
  const DensityMatrix bell = make_family("bell", {{"M", 2}});
  std::ofstream(tmp.file("good.json")) << dump_state_json(bell.matrix(), bell.dims());
  std::ofstream(tmp.file("trace.json")) << dump_state_json(0.9 * bell.matrix(), bell.dims());
  std::ofstream(tmp.file("trunc.json")) << "{\"dims\":[2,2],\n\"matrix\":[";

  const Run good = entb_cli({"validate", tmp.file("good.json")});
  CHECK(good.code == cli::kOk);
  CHECK(contains(good.out, "valid: yes"));

  const Run trace = entb_cli({"validate", "--state", tmp.file("trace.json")});
  CHECK(trace.code == cli::kInvalid);
  CHECK(contains(trace.out, "trace: FAIL TraceNotOne 1.0e-1"));
  CHECK(contains(trace.out, "hermitian: pass"));
  CHECK(contains(trace.out, "valid: no"));

  const Run trunc = entb_cli({"validate", tmp.file("trunc.json")});
  CHECK(trunc.code == cli::kUsage);
  CHECK(contains(trunc.err, "line 2"));

  const Run info = entb_cli({"info", "--state", tmp.file("trace.json")});
  CHECK(info.code == cli::kInvalid);
  CHECK(contains(info.err, "TraceNotOne"));
}

TEST_CASE("state file with m > n is relabelled") {
  TempDir tmp;
  const ComplexMatrix rho32 = kron(proj(ket(3, 0)), proj(ket(2, 1)));
  std::ofstream(tmp.file("swapped.json")) << dump_state_json(rho32, {3, 2});
  const Run r = entb_cli({"info", "--state", tmp.file("swapped.json")});
  CHECK(r.code == cli::kOk);
  CHECK(contains(r.out, "dims: 2x3 (relabelled from input m > n)"));
  CHECK(contains(r.out, "best: 0\n"));
}

TEST_CASE("sweep") {
  TempDir tmp;
  const Run r = entb_cli({"sweep", "--family", "figure1", "--param", "p", "--steps", "3", "--loo", "lemma1-psi"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out ==
        "param,ccnr_bound,ppt_bound,lurs_bound,cm_bound,best\n"
        "0,0,0,0,0,0\n"
        "0.5,0.207106781,0.207106781,0.25,0.0669872981,0.25\n"
        "1,1,1,1,0.922649731,1\n");

  const Run f = entb_cli({"sweep", "--family", "figure1", "--param", "p", "--steps", "3", "--loo", "lemma1-psi", "--out",
                          tmp.file("s.csv")});
  CHECK(f.code == cli::kOk);
  CHECK(contains(f.out, "wrote 3 rows"));
  std::ifstream in(tmp.file("s.csv"), std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == r.out);
}

TEST_CASE("optimize writes a reusable LOO pair") {
  TempDir tmp;
  const Run r = entb_cli({"optimize", "--family", "tiles_upb", "--restarts", "3", "--steps", "100", "--out",
                          tmp.file("pair.json")});
  CHECK(r.code == cli::kOk);
  CHECK(contains(r.out, "best seed: "));
  CHECK(contains(r.out, "restart 3: start "));
  CHECK(contains(r.out, "global best: raw "));

  const LooPair pair = read_loo_pair_file(tmp.file("pair.json"));
  const double bound = lurs_bound(make_family("tiles_upb"), pair);
  const Run info = entb_cli({"info", "--family", "tiles_upb", "--loo", "file=" + tmp.file("pair.json")});
  CHECK(info.code == cli::kOk);
  char expect[64];
  std::snprintf(expect, sizeof expect, "lurs_bound: raw %.9g", bound);
  CHECK(contains(info.out, expect));

  CHECK(entb_cli({"info", "--family", "bell:M=2", "--loo", "file=" + tmp.file("pair.json")}).code == cli::kInvalid);
}
