#pragma once

// FJSP problem data: jobs made of ordered operations, each operation runnable
// on a subset of machines with a machine-dependent duration.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace glnsa {

using Time = std::int64_t;
using JobId = int;      // 0-based internally
using MachineId = int;  // 0-based internally
using OpId = int;       // job-major linear index

struct OperationRef {
  JobId job = 0;
  int step = 0;
  OpId linear = 0;

  friend bool operator==(const OperationRef&, const OperationRef&) = default;
};

struct MachineOption {
  MachineId machine = 0;
  Time duration = 0;

  friend bool operator==(const MachineOption&, const MachineOption&) = default;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Truncated, BadToken, MachineOutOfRange, BadDuration, BadCount };

  ParseError(Kind kind, std::size_t token, const std::string& what)
      : std::runtime_error("token " + std::to_string(token) + ": " + what),
        kind_(kind),
        token_(token) {}

  Kind kind() const { return kind_; }
  std::size_t token_position() const { return token_; }

 private:
  Kind kind_;
  std::size_t token_;
};

class Instance {
 public:
  Instance() = default;

  // Builds an instance from per-job, per-operation option lists. Machine ids
  // and job ids are 0-based here. Throws std::invalid_argument on any
  // violated invariant.
  Instance(std::string name, int machine_count,
           std::vector<std::vector<std::vector<MachineOption>>> jobs)
      : name_(std::move(name)), machine_count_(machine_count) {
    if (machine_count_ < 1) throw std::invalid_argument("machine count must be positive");
    if (jobs.empty()) throw std::invalid_argument("instance has no jobs");
    job_offset_.reserve(jobs.size() + 1);
    job_offset_.push_back(0);
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (jobs[j].empty()) throw std::invalid_argument("job " + std::to_string(j + 1) + " has no operations");
      for (std::size_t s = 0; s < jobs[j].size(); ++s) {
        auto& opts = jobs[j][s];
        if (opts.empty()) throw std::invalid_argument("operation with empty eligible set");
        std::vector<Time> row(static_cast<std::size_t>(machine_count_), 0);
        for (const auto& o : opts) {
          if (o.machine < 0 || o.machine >= machine_count_)
            throw std::invalid_argument("machine id out of range");
          if (o.duration < 1) throw std::invalid_argument("processing time must be >= 1");
          if (row[static_cast<std::size_t>(o.machine)] != 0)
            throw std::invalid_argument("duplicate machine in eligible set");
          row[static_cast<std::size_t>(o.machine)] = o.duration;
        }
        ops_.push_back(OperationRef{static_cast<JobId>(j), static_cast<int>(s),
                                    static_cast<OpId>(ops_.size())});
        options_.push_back(std::move(opts));
        duration_.insert(duration_.end(), row.begin(), row.end());
      }
      job_offset_.push_back(static_cast<OpId>(ops_.size()));
    }
  }

  const std::string& name() const { return name_; }
  int job_count() const { return static_cast<int>(job_offset_.size()) - 1; }
  int machine_count() const { return machine_count_; }
  int operation_count() const { return static_cast<int>(ops_.size()); }
  int ops_in_job(JobId j) const { return job_offset_[j + 1] - job_offset_[j]; }

  OpId op_id(JobId job, int step) const { return job_offset_[job] + step; }
  const OperationRef& op(OpId id) const { return ops_[id]; }
  const std::vector<OperationRef>& operations() const { return ops_; }

  // Eligible machines of an operation, in file order.
  const std::vector<MachineOption>& options(OpId id) const { return options_[id]; }
  std::size_t eligible_count(OpId id) const { return options_[id].size(); }

  // Processing time of `id` on `machine`; 0 when the machine is not eligible.
  Time duration(OpId id, MachineId machine) const {
    return duration_[static_cast<std::size_t>(id) * machine_count_ + machine];
  }
  bool eligible(OpId id, MachineId machine) const {
    return machine >= 0 && machine < machine_count_ && duration(id, machine) > 0;
  }

  bool has_job_predecessor(OpId id) const { return ops_[id].step > 0; }
  bool has_job_successor(OpId id) const { return ops_[id].step + 1 < ops_in_job(ops_[id].job); }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.machine_count_ == b.machine_count_ && a.job_offset_ == b.job_offset_ &&
           a.options_ == b.options_;
  }

 private:
  std::string name_;
  int machine_count_ = 0;
  std::vector<OpId> job_offset_;
  std::vector<OperationRef> ops_;
  std::vector<std::vector<MachineOption>> options_;
  std::vector<Time> duration_;  // dense op x machine table
};

namespace detail {

class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  std::optional<std::string> next() {
    std::string tok;
    if (!(in_ >> tok)) return std::nullopt;
    ++position_;
    return tok;
  }

  long long next_integer(const char* what) {
    auto tok = next();
    if (!tok)
      throw ParseError(ParseError::Kind::Truncated, position_ + 1,
                       std::string("unexpected end of input, expected ") + what);
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(*tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok->size())
      throw ParseError(ParseError::Kind::BadToken, position_,
                       "expected integer " + std::string(what) + ", got '" + *tok + "'");
    return value;
  }

  std::size_t position() const { return position_; }
  void skip(std::size_t count) { position_ += count; }

 private:
  std::istream& in_;
  std::size_t position_ = 0;
};

}  // namespace detail

// Reads the whitespace-separated Hurink/Brandimarte format:
//   n m [avg_flexibility]
//   per job: n_i, then per operation: k, then k pairs (machine, time)
// Machine ids in the file are 1-based.
inline Instance parse_instance(std::istream& in, std::string name = {}) {
  using Kind = ParseError::Kind;
  detail::TokenReader tokens(in);

  // The header line is "n m [avg_flexibility]"; the optional third field may
  // be integral or real, so it is read line-wise before switching to a plain
  // token stream for the job data.
  std::string header;
  while (header.find_first_not_of(" \t\r") == std::string::npos) {
    if (!std::getline(in, header))
      throw ParseError(Kind::Truncated, 1, "unexpected end of input, expected header");
  }
  std::istringstream header_in(header);
  detail::TokenReader head(header_in);
  const long long n = head.next_integer("job count");
  if (n < 1) throw ParseError(Kind::BadCount, 1, "job count must be >= 1");
  const long long m = head.next_integer("machine count");
  if (m < 1) throw ParseError(Kind::BadCount, 2, "machine count must be >= 1");
  if (auto flex = head.next()) {
    std::size_t used = 0;
    try {
      (void)std::stod(*flex, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != flex->size())
      throw ParseError(Kind::BadToken, 3, "expected average flexibility, got '" + *flex + "'");
  }
  if (head.next()) throw ParseError(Kind::BadToken, 4, "unexpected extra token in header");
  tokens.skip(head.position());

  std::vector<std::vector<std::vector<MachineOption>>> jobs(static_cast<std::size_t>(n));
  for (long long j = 0; j < n; ++j) {
    const long long ops = tokens.next_integer("operation count");
    if (ops < 1)
      throw ParseError(Kind::BadCount, tokens.position(),
                       "job " + std::to_string(j + 1) + " operation count must be >= 1");
    auto& job = jobs[static_cast<std::size_t>(j)];
    job.resize(static_cast<std::size_t>(ops));
    for (auto& op : job) {
      const long long k = tokens.next_integer("eligible machine count");
      if (k < 1)
        throw ParseError(Kind::BadCount, tokens.position(), "eligible machine count must be >= 1");
      op.reserve(static_cast<std::size_t>(k));
      for (long long e = 0; e < k; ++e) {
        const long long machine = tokens.next_integer("machine id");
        if (machine < 1 || machine > m)
          throw ParseError(Kind::MachineOutOfRange, tokens.position(),
                           "machine id " + std::to_string(machine) + " outside 1.." + std::to_string(m));
        const long long time = tokens.next_integer("processing time");
        if (time < 1)
          throw ParseError(Kind::BadDuration, tokens.position(),
                           "processing time " + std::to_string(time) + " must be >= 1");
        for (const auto& prev : op)
          if (prev.machine == machine - 1)
            throw ParseError(Kind::BadToken, tokens.position() - 1,
                             "machine " + std::to_string(machine) + " listed twice for one operation");
        op.push_back(MachineOption{static_cast<MachineId>(machine - 1), static_cast<Time>(time)});
      }
    }
  }
  return Instance(std::move(name), static_cast<int>(m), std::move(jobs));
}

inline Instance parse_instance(const std::string& text, std::string name) {
  std::istringstream in(text);
  return parse_instance(in, std::move(name));
}

// Loads an instance file; the instance name defaults to the file stem.
inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  auto slash = path.find_last_of("/\\");
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0) stem.resize(dot);
  return parse_instance(in, stem);
}

// Mean eligible-set size divided by the machine count.
inline double flexibility_rate(const Instance& inst) {
  std::size_t total = 0;
  for (OpId o = 0; o < inst.operation_count(); ++o) total += inst.eligible_count(o);
  return static_cast<double>(total) /
         (static_cast<double>(inst.operation_count()) * inst.machine_count());
}

inline std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << inst.job_count() << ' ' << inst.machine_count() << ' '
      << flexibility_rate(inst) * inst.machine_count() << '\n';
  for (JobId j = 0; j < inst.job_count(); ++j) {
    out << inst.ops_in_job(j);
    for (int s = 0; s < inst.ops_in_job(j); ++s) {
      const auto& opts = inst.options(inst.op_id(j, s));
      out << "  " << opts.size();
      for (const auto& o : opts) out << ' ' << o.machine + 1 << ' ' << o.duration;
    }
    out << '\n';
  }
  return out.str();
}

// Lower bound on any schedule's makespan: the longest job using its fastest
// machines, and the total minimal work spread over all machines.
inline Time makespan_lower_bound(const Instance& inst) {
  Time job_bound = 0;
  Time work = 0;
  for (JobId j = 0; j < inst.job_count(); ++j) {
    Time len = 0;
    for (int s = 0; s < inst.ops_in_job(j); ++s) {
      Time best = 0;
      for (const auto& o : inst.options(inst.op_id(j, s)))
        if (best == 0 || o.duration < best) best = o.duration;
      len += best;
    }
    job_bound = std::max(job_bound, len);
    work += len;
  }
  return std::max(job_bound, (work + inst.machine_count() - 1) / inst.machine_count());
}

}  // namespace glnsa
