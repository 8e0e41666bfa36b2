#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "blip/cli/commands.hpp"
#include "blip/cli/config.hpp"
#include "blip/cli/output.hpp"
#include "blip/error.hpp"

using namespace blip;
using namespace blip::cli;
namespace fs = std::filesystem;

namespace {

const std::string kAirToMedium = R"(
[grid]
x_min = -200
x_max = 200
n_points = 16384
[packet]
channel = +H
x0 = -50
k0 = 30
sigma = 2
[media]
left_n = 1
right_n = 1.5
[schedule]
times = 0, 50, 100
)";

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string config_error(std::string_view text) {
  try {
    parse_run_config(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::configuration);
    return e.what();
  }
  ADD_FAILURE() << "config accepted";
  return {};
}

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("blip_cli_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return path_ / name;
  }

 private:
  fs::path path_;
};

}  // namespace

TEST(FormatReal, SeventeenDigits) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(1.0), "1");
  EXPECT_EQ(format_real(-0.0), "0");
  EXPECT_EQ(format_real(1.0 / 3.0), "0.33333333333333331");
  EXPECT_EQ(format_real(1e-300), "1e-300");
  EXPECT_THROW(format_real(std::numeric_limits<double>::quiet_NaN()), Error);
  EXPECT_THROW(format_real(std::numeric_limits<double>::infinity()), Error);
}

TEST(Json, WriterNestsAndEscapes) {
  std::ostringstream os;
  JsonWriter w(os);
  w.begin_object();
  w.field("a", 0.5).field("s", "q\"\n");
  w.key("arr").begin_array().value(true).value(std::size_t{3}).end_array();
  w.key("empty").begin_object().end_object();
  w.end_object();
  w.finish();
  const std::string s = os.str();
  EXPECT_NE(s.find("\"a\": 0.5"), std::string::npos);
  EXPECT_NE(s.find("\"q\\\"\\n\""), std::string::npos);
  EXPECT_NE(s.find("true"), std::string::npos);
  EXPECT_EQ(s.back(), '\n');
}

TEST(Table, CsvAndJson) {
  Table t({"x", "name"}, {false, true});
  t.add_row({"1", "a"});
  t.add_row({"2.5", "b"});
  std::ostringstream csv;
  t.write_csv(csv);
  EXPECT_EQ(csv.str(), "x,name\n1,a\n2.5,b\n");
  std::ostringstream js;
  JsonWriter w(js);
  t.write_json(w);
  w.finish();
  EXPECT_NE(js.str().find("\"name\": \"b\""), std::string::npos);
  EXPECT_NE(js.str().find("\"x\": 2.5"), std::string::npos);
  EXPECT_THROW(t.add_row({"1"}), Error);
}

TEST(Config, ParsesExample) {
  const RunConfig cfg = parse_run_config(kAirToMedium);
  EXPECT_EQ(cfg.grid.n_points, 16384u);
  EXPECT_EQ(cfg.packet.channel, (Channel{Direction::plus, Polarization::H}));
  EXPECT_EQ(cfg.media.right.n, 1.5);
  EXPECT_EQ(cfg.times, (std::vector<double>{0.0, 50.0, 100.0}));
  EXPECT_EQ(cfg.coupling.source, CouplingSource::from_n);
}

TEST(Config, ScheduleRange) {
  const RunConfig cfg = parse_run_config("[schedule]\nstart = 0\nstop = 10\ncount = 6\n");
  EXPECT_EQ(cfg.times, (std::vector<double>{0.0, 2.0, 4.0, 6.0, 8.0, 10.0}));
}

TEST(Config, OmegaCoupling) {
  const RunConfig cfg =
      parse_run_config("[coupling]\nsource = omega\nomega_re = 0.1\nomega_im = -0.4\n[schedule]\ntimes = 1\n");
  EXPECT_EQ(cfg.coupling.source, CouplingSource::explicit_omega);
  EXPECT_EQ(cfg.coupling.omega, Complex(0.1, -0.4));
}

TEST(Config, ErrorsNameTheLine) {
  EXPECT_NE(config_error("[grid]\nx_min = -1\nbogus = 3\n").find("line 3"), std::string::npos);
  EXPECT_NE(config_error("[nowhere]\n").find("line 1"), std::string::npos);
  EXPECT_NE(config_error("[grid]\nn_points = many\n").find("n_points"), std::string::npos);
  EXPECT_NE(config_error("[grid]\nx_min = 1\nx_min = 2\n").find("line 3"), std::string::npos);
  EXPECT_NE(config_error("x_min = 1\n").find("line 1"), std::string::npos);
  config_error("[packet]\nchannel = +X\n");
  config_error("[grid]\nx_min = nan\n");
  config_error("[media]\nleft_n = 1.5\nleft_epsilon = 2\n");
}

TEST(Config, BuildRejectsBadPhysics) {
  auto build_kind = [](const std::string& text) {
    try {
      build_scenario(parse_run_config(text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::consistency;
  };
  EXPECT_EQ(build_kind(kAirToMedium + "[tolerance]\nenergy = 1e-9\n"), ErrorKind::consistency);
  EXPECT_EQ(build_kind("[grid]\nn_points = 1000\n[schedule]\ntimes = 0\n"), ErrorKind::configuration);
  EXPECT_EQ(build_kind("[grid]\nx_min = 5\nx_max = 1\n[schedule]\ntimes = 0\n"), ErrorKind::configuration);
  EXPECT_EQ(build_kind("[media]\nright_n = -2\n[schedule]\ntimes = 0\n"), ErrorKind::configuration);
}

TEST(Commands, RunAirToMedium) {
  const RunArtifacts art = execute_run(parse_run_config(kAirToMedium));
  EXPECT_TRUE(art.summary.all_pass());
  EXPECT_NEAR(art.summary.prob_t, 0.96, 1e-12);
  EXPECT_NEAR(art.summary.final_total.dyn_momentum / art.summary.input.dyn_momentum, 1.4, 1e-6);
  EXPECT_EQ(art.timeseries.rows().size(), 2u + 1u + 3u);
  EXPECT_TRUE(art.snapshots.empty());
}

TEST(Commands, RunWritesFilesDeterministically) {
  TempDir tmp;
  const fs::path cfg = tmp.write("a.ini", kAirToMedium + "[output]\nsnapshots = true\n");
  std::ostringstream out, err;
  Options o{cfg, true, tmp.path() / "one", Format::csv};
  ASSERT_EQ(run_command(o, out, err), exit_code::ok) << err.str();
  o.out = tmp.path() / "two";
  ASSERT_EQ(run_command(o, out, err), exit_code::ok) << err.str();
  for (const char* f : {"summary.json", "timeseries.csv", "snapshot_000.csv", "snapshot_002.csv"}) {
    const std::string a = read_file(tmp.path() / "one" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, read_file(tmp.path() / "two" / f)) << f;
  }
  const std::string summary = read_file(tmp.path() / "one" / "summary.json");
  EXPECT_NE(summary.find("\"all_pass\": true"), std::string::npos);
  EXPECT_EQ(summary.find("nan"), std::string::npos);
}

TEST(Commands, JsonFormat) {
  TempDir tmp;
  const fs::path cfg = tmp.write("a.ini", kAirToMedium);
  std::ostringstream out, err;
  ASSERT_EQ(run_command({cfg, false, tmp.path() / "o", Format::json}, out, err), exit_code::ok);
  const std::string ts = read_file(tmp.path() / "o" / "timeseries.json");
  EXPECT_EQ(ts.front(), '[');
  EXPECT_NE(ts.find("\"branch\": \"transmitted\""), std::string::npos);
}

TEST(Commands, StrictTurnsBreachesIntoExitOne) {
  TempDir tmp;
  // A tolerance tighter than roundoff cannot be met.
  const fs::path cfg = tmp.write("a.ini", kAirToMedium + "[tolerance]\nmomentum = 1e-30\n");
  std::ostringstream out, err;
  EXPECT_EQ(run_command({cfg, false, tmp.path() / "lax", Format::csv}, out, err), exit_code::ok);
  EXPECT_EQ(run_command({cfg, true, tmp.path() / "strict", Format::csv}, out, err), exit_code::tolerance_breach);
  EXPECT_NE(out.str().find("FAIL"), std::string::npos);
}

TEST(Commands, ConfigErrorsLeaveNoOutput) {
  TempDir tmp;
  const fs::path cfg = tmp.write("bad.ini", kAirToMedium + "[grid]\n");
  std::ostringstream out, err;
  EXPECT_EQ(run_command({cfg, false, tmp.path() / "o", Format::csv}, out, err), exit_code::config_error);
  EXPECT_FALSE(fs::exists(tmp.path() / "o"));
  EXPECT_EQ(run_command({tmp.path() / "missing.ini", false, tmp.path() / "o", Format::csv}, out, err),
            exit_code::config_error);
  EXPECT_EQ(run_command({std::nullopt, false, tmp.path() / "o", Format::csv}, out, err), exit_code::config_error);
  EXPECT_FALSE(fs::exists(tmp.path() / "o"));
}

TEST(Commands, RuntimeErrorsLeaveNoOutput) {
  TempDir tmp;
  std::string text = kAirToMedium;
  text.replace(text.find("times = 0, 50, 100"), 18, "times = 0, 30");
  const fs::path cfg = tmp.write("early.ini", text);
  std::ostringstream out, err;
  EXPECT_EQ(run_command({cfg, false, tmp.path() / "o", Format::csv}, out, err), exit_code::runtime_error);
  EXPECT_FALSE(fs::exists(tmp.path() / "o"));
  EXPECT_NE(err.str().find("crossing window"), std::string::npos);
}

TEST(Commands, ShippedExamplesPass) {
  for (const char* name : {"air_to_medium.ini", "medium_to_air.ini"}) {
    const RunArtifacts art = execute_run(load_run_config(fs::path(BLIP_EXAMPLES_DIR) / name));
    EXPECT_TRUE(art.summary.all_pass()) << name;
  }
}

TEST(Commands, CheckSweep) {
  const CheckResult res = execute_check({1.0, 3.0, 21});
  EXPECT_TRUE(res.all_pass);
  ASSERT_EQ(res.table.rows().size(), 21u);
  EXPECT_EQ(res.table.rows()[10][0], "2");
  EXPECT_EQ(res.table.rows()[0].back(), "true");
  EXPECT_THROW(execute_check({0.0, 2.0, 3}), Error);
  EXPECT_THROW(execute_check({2.0, 1.0, 3}), Error);
}

TEST(Commands, CheckIsDeterministic) {
  std::ostringstream a, b, err;
  Options o;
  ASSERT_EQ(check_command({0.5, 4.0, 64}, o, a, err), exit_code::ok);
  ASSERT_EQ(check_command({0.5, 4.0, 64}, o, b, err), exit_code::ok);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Commands, DysonConvergentAndDivergent) {
  const DysonResult ok = execute_dyson({0.5, 12});
  EXPECT_TRUE(ok.convergent);
  EXPECT_TRUE(ok.within_bounds);
  EXPECT_EQ(ok.table.rows().size(), 13u);
  const DysonResult bad = execute_dyson({1.5, 5});
  EXPECT_FALSE(bad.convergent);
  EXPECT_EQ(bad.table.rows().back().back(), "divergent");

  std::ostringstream out, err;
  EXPECT_EQ(dyson_command({1.5, 5}, {}, out, err), exit_code::ok);
  EXPECT_NE(err.str().find("divergent"), std::string::npos);
  EXPECT_EQ(dyson_command({-1.0, 5}, {}, out, err), exit_code::config_error);
}
