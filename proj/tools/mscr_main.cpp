// mscr: file-level erasure coding with cooperative multi-node repair.
//
//   mscr encode <file> --n 8 --k 4 --d 6 --t 2 --out shards/
//   mscr repair shards/
//   mscr decode shards/ --out restored.bin
//   mscr inspect shards/shard_0001.mscr
//   mscr simulate --n 8 --k 4 --d 6 --t 2 --seed 7
//   mscr selftest

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mscr/cluster.hpp"
#include "mscr/file_codec.hpp"
#include "mscr/msr.hpp"
#include "mscr/reconstruct.hpp"

namespace fs = std::filesystem;
using namespace mscr;

namespace {

struct CodeFlags {
  std::uint32_t n = 0, k = 0, d = 0, t = 0;
  std::optional<std::uint32_t> modulus;
};

void add_code_flags(CLI::App* cmd, CodeFlags& flags) {
  cmd->add_option("--n", flags.n, "total number of nodes")->required();
  cmd->add_option("--k", flags.k, "nodes needed to read the data")->required();
  cmd->add_option("--d", flags.d, "helpers each newcomer contacts")->required();
  cmd->add_option("--t", flags.t, "simultaneous failures repaired per session")->required();
  cmd->add_option("--modulus", flags.modulus, "pin the prime field modulus");
}

std::optional<Symbol> to_modulus(const CodeFlags& flags) {
  if (!flags.modulus) return std::nullopt;
  return static_cast<Symbol>(*flags.modulus);
}

int cmd_encode(const fs::path& input, const CodeFlags& flags, const fs::path& out_dir) {
  const EncodeFileReport report =
      encode_file(input, flags.n, flags.k, flags.d, flags.t, to_modulus(flags), out_dir);
  std::cout << "encoded " << report.manifest.length << " bytes into " << report.shard_paths.size()
            << " shards (" << report.manifest.stripes << " stripes, modulus "
            << report.manifest.modulus << ")\n"
            << "manifest: " << (out_dir / kManifestFileName).string() << "\n";
  return 0;
}

int cmd_repair(const fs::path& dir, const std::vector<std::uint32_t>& helpers) {
  const RepairFilesReport report = repair_shards(
      dir,
      helpers.empty() ? std::nullopt : std::optional<std::vector<std::uint32_t>>(helpers));
  std::cout << "regenerated";
  for (std::uint32_t node : report.regenerated) std::cout << " shard " << node;
  std::cout << " (" << report.stripes << " stripes)\n";
  for (const RepairTally& tally : report.tallies) {
    std::cout << "newcomer " << tally.newcomer << ": downloaded " << tally.phase1_symbols
              << " phase-1 + " << tally.phase2_symbols << " phase-2 symbols ("
              << report.per_newcomer_per_stripe << " per stripe = d + t - 1)\n";
  }
  return 0;
}

int cmd_decode(const fs::path& dir, const fs::path& out_path) {
  const DecodeFileReport report = decode_file(dir, out_path);
  std::cout << "decoded " << report.bytes_written << " bytes to " << out_path.string()
            << " (checksum verified)\n";
  return 0;
}

int cmd_inspect(const std::vector<fs::path>& paths) {
  for (const fs::path& path : paths) {
    if (path.filename() == kManifestFileName) {
      const Manifest m = read_manifest(path);
      std::cout << path.string() << ": manifest n=" << m.n << " k=" << m.k << " d=" << m.d
                << " t=" << m.t << " modulus=" << m.modulus << " length=" << m.length
                << " stripes=" << m.stripes << " checksum=" << m.checksum << "\n";
      continue;
    }
    const auto [header, payload] = read_shard_file(path);
    const CodeParams params = derive_params(header.n, header.k, header.d, header.t,
                                            DeriveOptions{.modulus = header.modulus});
    std::cout << path.string() << ": node " << header.node_index << "/" << header.n
              << " k=" << header.k << " d=" << header.d << " t=" << header.t
              << " modulus=" << header.modulus << " stripes=" << header.stripe_count
              << " alpha=" << params.alpha << " symbols=" << payload.size();
    if (params.delta > 0) {
      std::cout << " (shortened: delta=" << params.delta << ", inner code (" << params.n_inner
                << "," << params.k_inner << "," << params.d_inner << "," << params.t << "))";
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_simulate(const CodeFlags& flags, std::uint64_t seed, const std::string& policy_name) {
  const CodeParams params =
      derive_params(flags.n, flags.k, flags.d, flags.t, DeriveOptions{.modulus = to_modulus(flags)});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Symbol> pick(0, params.field.field().modulus() - 1);
  std::vector<Symbol> message(params.message_len);
  for (Symbol& s : message) s = pick(rng);

  Cluster cluster(params, message, seed);
  const auto failed = cluster.fail_random(params.t);
  std::cout << "failed nodes:";
  for (std::uint32_t node : failed) std::cout << " " << node;
  std::cout << "\n";

  const HelperPolicy policy =
      policy_name == "round-robin" ? HelperPolicy::round_robin : HelperPolicy::lowest_index;
  cluster.run_cooperative_repair(policy);

  const BandwidthReport report = cluster.audit_bandwidth();
  for (const auto& entry : report.newcomers) {
    std::cout << "newcomer " << entry.node << ": " << entry.phase1 << " phase-1 + " << entry.phase2
              << " phase-2 symbols\n";
  }
  std::cout << "total " << report.total_symbols << " symbols, optimum per newcomer "
            << report.expected_per_newcomer << " -> " << (report.pass ? "PASS" : "FAIL") << "\n";

  std::vector<std::uint32_t> readers;
  for (std::uint32_t i = 1; readers.size() < params.k; ++i) readers.push_back(i);
  std::cout << "decode after repair: "
            << (cluster.decode_from(readers) == message ? "message intact" : "MESSAGE LOST")
            << "\n";
  std::cout << "traffic log (phase,sender,receiver,symbols):\n";
  cluster.export_traffic_log(std::cout);
  return report.pass ? 0 : 1;
}

std::vector<std::vector<std::uint32_t>> subsets_of(std::uint32_t n, std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> all;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::uint32_t next) -> void {
    if (cur.size() == k) {
      all.push_back(cur);
      return;
    }
    for (std::uint32_t v = next; v <= n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return all;
}

int cmd_selftest() {
  std::size_t checks = 0;
  auto expect = [&checks](bool ok, const char* what) {
    if (!ok) throw Error(std::string("selftest failed: ") + what);
    ++checks;
  };

  // The worked GF(7) code, exercised end to end.
  {
    const CodeParams p = derive_params(5, 3, 3, 2);
    expect(p.field.field().modulus() == 7, "worked field is GF(7)");
    const std::vector<Symbol> message{1, 2, 3, 4, 5, 6};
    const auto shards = encode_systematic(p, message);
    expect(shards[0].symbols == std::vector<Symbol>{1, 2}, "systematic node 1");
    for (const auto& subset : subsets_of(5, 3)) {
      std::vector<Shard> chosen;
      for (std::uint32_t i : subset) chosen.push_back(shards[i - 1]);
      expect(decode_systematic(p, chosen) == message, "decode from every 3-subset");
    }
    for (const auto& failed : subsets_of(5, 2)) {
      std::vector<Shard> survivors;
      std::vector<std::uint32_t> helper_set;
      for (const Shard& s : shards) {
        if (s.node_index != failed[0] && s.node_index != failed[1]) {
          survivors.push_back(s);
          helper_set.push_back(s.node_index);
        }
      }
      const std::vector<std::vector<std::uint32_t>> helpers(2, helper_set);
      const RepairOutcome outcome = run_repair_session(p, failed, helpers, survivors);
      for (const Shard& rep : outcome.repaired) {
        expect(rep.symbols == shards[rep.node_index - 1].symbols, "repair every failure pair");
      }
      for (const RepairTally& tally : outcome.tallies) {
        expect(tally.phase1_symbols + tally.phase2_symbols == p.d + p.t - 1,
               "bandwidth at the optimum");
      }
    }
  }

  // Pair decoder against its forward map over GF(11).
  {
    PrimeField f(11);
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<Symbol> pick(0, 10);
    const std::vector<Symbol> points{1, 2, 3, 4};
    const std::vector<Symbol> lambda{2, 5, 6, 7};
    const Matrix phi = vandermonde(f, points, 3);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<Symbol> s_upper(6), t_upper(6);
      for (Symbol& v : s_upper) v = pick(rng);
      for (Symbol& v : t_upper) v = pick(rng);
      const SymmetricMatrix s = SymmetricMatrix::pack(3, s_upper);
      const SymmetricMatrix t = SymmetricMatrix::pack(3, t_upper);
      Matrix x(4, 3);
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t c = 0; c < 3; ++c) {
          Symbol acc = 0;
          for (std::size_t l = 0; l < 3; ++l) {
            acc = f.add(acc, f.mul(phi(i, l), s.at(l, c)));
            acc = f.add(acc, f.mul(lambda[i], f.mul(phi(i, l), t.at(l, c))));
          }
          x(i, c) = acc;
        }
      }
      const DecodedPair pair = decode_pair(f, x, phi, lambda);
      expect(pair.S == s && pair.T == t, "pair decoder round trip");
    }
  }

  // Shortened code and the single-failure reference code.
  {
    const CodeParams p = derive_params(10, 4, 8, 2);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Symbol> pick(0, p.field.field().modulus() - 1);
    std::vector<Symbol> message(p.message_len);
    for (Symbol& s : message) s = pick(rng);
    const auto shards = encode_systematic(p, message);
    const std::vector<Shard> subset{shards[4], shards[6], shards[7], shards[8]};
    expect(decode_systematic(p, subset) == message, "shortened decode from a parity-heavy subset");

    const MsrParams m = derive_msr_params(6, 3);
    std::vector<Symbol> msg(m.message_len);
    for (Symbol& s : msg) s = pick(rng);
    const auto mshards = msr_encode(m, msg);
    const std::vector<Shard> helpers{mshards[1], mshards[2], mshards[4], mshards[5]};
    expect(msr_repair(m, 1, helpers).row == mshards[0].symbols, "reference code repair");
  }

  std::cout << "selftest passed (" << checks << " checks)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scalar erasure coding with cooperative multi-node repair"};
  app.require_subcommand(1);

  auto* encode = app.add_subcommand("encode", "split a file into n shard files plus a manifest");
  std::string encode_input;
  std::string encode_out;
  CodeFlags encode_flags;
  encode->add_option("file", encode_input, "input file")->required();
  add_code_flags(encode, encode_flags);
  encode->add_option("--out", encode_out, "output directory")->required();

  auto* repair = app.add_subcommand("repair", "regenerate missing shard files in a directory");
  std::string repair_dir;
  std::vector<std::uint32_t> repair_helpers;
  repair->add_option("dir", repair_dir, "shard directory")->required();
  repair
      ->add_option("--helpers", repair_helpers,
                   "helper node indices (d of them; default: lowest-indexed survivors)")
      ->delimiter(',');

  auto* decode = app.add_subcommand("decode", "restore the original file from any k shards");
  std::string decode_dir;
  std::string decode_out;
  decode->add_option("dir", decode_dir, "shard directory")->required();
  decode->add_option("--out", decode_out, "output file")->required();

  auto* inspect = app.add_subcommand("inspect", "print shard or manifest headers");
  std::vector<std::string> inspect_paths;
  inspect->add_option("paths", inspect_paths, "shard or manifest files")->required();

  auto* simulate = app.add_subcommand("simulate", "run a failure + repair cycle in memory");
  CodeFlags sim_flags;
  std::uint64_t sim_seed = 0;
  std::string sim_policy = "lowest";
  add_code_flags(simulate, sim_flags);
  simulate->add_option("--seed", sim_seed, "rng seed for failure injection");
  simulate->add_option("--policy", sim_policy, "helper policy")
      ->check(CLI::IsMember({"lowest", "round-robin"}));

  app.add_subcommand("selftest", "run the built-in exhaustive small-instance checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (encode->parsed()) return cmd_encode(encode_input, encode_flags, encode_out);
    if (repair->parsed()) return cmd_repair(repair_dir, repair_helpers);
    if (decode->parsed()) return cmd_decode(decode_dir, decode_out);
    if (inspect->parsed()) {
      return cmd_inspect(std::vector<fs::path>(inspect_paths.begin(), inspect_paths.end()));
    }
    if (simulate->parsed()) return cmd_simulate(sim_flags, sim_seed, sim_policy);
    return cmd_selftest();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
