#include "newman/checkpoint.hpp"

#include <sstream>

namespace newman {

namespace {
constexpr const char* magic = "# newman-claims v1";

[[noreturn]] void malformed(const std::filesystem::path& path, std::size_t line, const std::string& what) {
  throw CheckpointMismatch(path.string() + ":" + std::to_string(line) + ": " + what);
}
}  // namespace

CheckpointContents read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read checkpoint " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  // Drop a torn final line.
  if (!text.empty() && text.back() != '\n') text.erase(text.find_last_of('\n') == std::string::npos ? 0 : text.find_last_of('\n') + 1);

  CheckpointContents out;
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  bool saw_max_n = false, saw_primes = false;
  while (std::getline(lines, line)) {
    ++number;
    if (number == 1) {
      if (line != magic) malformed(path, number, "not a claims checkpoint");
      continue;
    }
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "max_n") {
      if (!(fields >> out.header.max_n)) malformed(path, number, "bad max_n");
      saw_max_n = true;
    } else if (tag == "primes") {
      std::uint32_t p;
      while (fields >> p) out.header.primes.push_back(p);
      saw_primes = true;
    } else if (tag == "n") {
      std::size_t n;
      std::string kind;
      if (!(fields >> n >> kind)) malformed(path, number, "bad claim record");
      if (kind == "case-analysis") {
        out.claims.emplace_back(n, ClaimStatus::case_analysis());
      } else if (kind == "proven-mod") {
        std::uint32_t p;
        if (!(fields >> p)) malformed(path, number, "missing witness prime");
        out.claims.emplace_back(n, ClaimStatus::mod_prime(p));
      } else {
        malformed(path, number, "unknown claim kind '" + kind + "'");
      }
    } else if (tag == "pass") {
      std::uint32_t p;
      std::string done;
      std::size_t upto;
      if (!(fields >> p >> done >> upto) || done != "done") malformed(path, number, "bad pass record");
      out.passes.emplace_back(p, upto);
    } else if (!tag.empty()) {
      malformed(path, number, "unknown record '" + tag + "'");
    }
  }
  if (number == 0) malformed(path, 1, "empty checkpoint");
  if (!saw_max_n || !saw_primes) malformed(path, number, "incomplete header");
  return out;
}

CheckpointWriter CheckpointWriter::create(const std::filesystem::path& path, const CheckpointHeader& header) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write checkpoint " + path.string());
  out << magic << '\n' << "max_n " << header.max_n << '\n' << "primes";
  for (auto p : header.primes) out << ' ' << p;
  out << '\n';
  CheckpointWriter w(std::move(out), path);
  w.flush();
  return w;
}

CheckpointWriter CheckpointWriter::append(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot append to checkpoint " + path.string());
  return CheckpointWriter(std::move(out), path);
}

void CheckpointWriter::claim(std::size_t n, const ClaimStatus& status) {
  out_ << "n " << n << ' ' << to_string(status) << '\n';
}

void CheckpointWriter::pass_done(std::uint32_t prime, std::size_t proved_up_to) {
  out_ << "pass " << prime << " done " << proved_up_to << '\n';
}

void CheckpointWriter::flush() {
  out_.flush();
  if (!out_) throw IoError("write to checkpoint " + path_.string() + " failed");
}

}  // namespace newman
