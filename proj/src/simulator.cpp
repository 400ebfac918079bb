#include "tandem/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <unordered_map>

#include "batch_means.hpp"
#include "tandem/errors.hpp"

namespace tandem::sim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class ExpStream {
 public:
  ExpStream(std::uint64_t seed, double rate) : engine_(seed), rate_(rate) {}

  double next() {
    // 53 random bits -> u in [0, 1)
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return -std::log1p(-u) / rate_;
  }

 private:
  std::mt19937_64 engine_;
  double rate_;
};

// Observation window [start, end) cut into equal batches.
class Window {
 public:
  Window(double start, double end, int batches)
      : start_(start), end_(end), batches_(batches), width_((end - start) / batches) {}

  double start() const { return start_; }
  double end() const { return end_; }
  int batches() const { return batches_; }
  double width() const { return width_; }
  double length() const { return end_ - start_; }
  bool contains(double t) const { return t >= start_ && t < end_; }

  int batch_of(double t) const {
    const int b = static_cast<int>((t - start_) / width_);
    return std::clamp(b, 0, batches_ - 1);
  }

  double batch_begin(int b) const { return start_ + b * width_; }
  double batch_end(int b) const { return b + 1 == batches_ ? end_ : start_ + (b + 1) * width_; }

  // Splits [a, b) clipped to the window across batch boundaries.
  template <class F>
  void for_each_piece(double a, double b, F&& f) const {
    a = std::max(a, start_);
    b = std::min(b, end_);
    while (a < b) {
      const int k = batch_of(a);
      const double stop = std::min(b, batch_end(k));
      if (stop <= a) break;
      f(k, a, stop);
      a = stop;
    }
  }

 private:
  double start_;
  double end_;
  int batches_;
  double width_;
};

// Integrates the sawtooth t - u(t). u starts at 0, i.e. a fresh update at time 0.
class AgeIntegrator {
 public:
  explicit AgeIntegrator(const Window& w) : window_(&w), area_(w.batches(), 0.0) {}

  void advance(double t) {
    const double u = newest_;
    window_->for_each_piece(last_, t, [&](int k, double a, double b) {
      area_[k] += (b - a) * ((a - u) + (b - u)) * 0.5;
    });
    last_ = std::max(last_, t);
  }

  void deliver(double t, double generated) {
    advance(t);
    newest_ = std::max(newest_, generated);
  }

  double batch_age(int k) const {
    return area_[k] / (window_->batch_end(k) - window_->batch_begin(k));
  }

  double total_area() const {
    double a = 0.0;
    for (double v : area_) a += v;
    return a;
  }

 private:
  const Window* window_;
  std::vector<double> area_;
  double last_ = 0.0;
  double newest_ = 0.0;
};

struct InFlight {
  std::uint64_t id;
  std::size_t origin;
  double t_gen;
  double interarrival;
  double arrived_here;
  double wait;
  double service;
};

struct Node {
  NodeConfig config;
  ExpStream arrivals;
  ExpStream services;
  std::deque<InFlight> queue;
  double next_arrival = kInf;
  double next_departure = kInf;
  double last_gen = kNaN;  // previous ground packet generated here

  // occupancy bookkeeping
  double last_change = 0.0;
  double area = 0.0;
  double busy = 0.0;
  double sojourn_sum = 0.0;
  std::uint64_t departures_in_window = 0;
};

struct SourceAccumulator {
  std::size_t origin;
  AgeIntegrator age;
  detail::BatchedMean delay;
  detail::BatchedMean ewy;
  std::vector<std::uint64_t> batch_departures;
};

class Engine {
 public:
  Engine(const NetworkSpec& spec, const SimOptions& opt)
      : opt_(opt),
        window_(opt.effective_warmup(), opt.horizon, opt.batches),
        system_age_(window_),
        delay_(opt.batches),
        wait_(opt.batches),
        ewy_(opt.batches),
        source_of_node_(spec.size(), -1) {
    nodes_.reserve(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) {
      const auto& cfg = spec.node(k);
      // Ground rate 0 still gets a stream object; it is never sampled.
      nodes_.push_back(Node{cfg,
                            ExpStream(derive_stream_seed(opt.seed, 2 * k),
                                      cfg.ground_rate > 0.0 ? cfg.ground_rate : 1.0),
                            ExpStream(derive_stream_seed(opt.seed, 2 * k + 1), cfg.service_rate),
                            {}});
      if (cfg.ground_rate > 0.0) {
        source_of_node_[k] = static_cast<int>(sources_.size());
        sources_.push_back(SourceAccumulator{k, AgeIntegrator(window_),
                                             detail::BatchedMean(opt.batches),
                                             detail::BatchedMean(opt.batches),
                                             std::vector<std::uint64_t>(opt.batches, 0)});
        nodes_.back().next_arrival = nodes_.back().arrivals.next();
      }
    }
  }

  SimResult run() {
    const std::size_t count = nodes_.size();
    for (;;) {
      // Departures before arrivals, lower node index first on exact ties.
      double t = kInf;
      std::size_t which = 0;
      bool is_departure = false;
      for (std::size_t k = 0; k < count; ++k) {
        if (nodes_[k].next_departure < t) {
          t = nodes_[k].next_departure;
          which = k;
          is_departure = true;
        }
      }
      for (std::size_t k = 0; k < count; ++k) {
        if (nodes_[k].next_arrival < t) {
          t = nodes_[k].next_arrival;
          which = k;
          is_departure = false;
        }
      }
      if (!(t < opt_.horizon)) break;
      if (is_departure) {
        depart(which, t);
      } else {
        ground_arrival(which, t);
      }
    }
    return finish();
  }

 private:
  void touch(Node& n, double t) {
    const double span = std::max(0.0, std::min(t, window_.end()) -
                                          std::max(n.last_change, window_.start()));
    const auto in_node = static_cast<double>(n.queue.size());
    n.area += in_node * span;
    if (!n.queue.empty()) n.busy += span;
    n.last_change = t;
  }

  void start_service(std::size_t k, double t) {
    Node& n = nodes_[k];
    InFlight& head = n.queue.front();
    const double s = n.services.next();
    head.wait += t - head.arrived_here;
    head.service += s;
    n.next_departure = t + s;
    if (auto it = traces_.find(head.id); it != traces_.end()) {
      it->second.hops.back().service_start = t;
    }
  }

  void enqueue(std::size_t k, InFlight pkt, double t) {
    Node& n = nodes_[k];
    touch(n, t);
    pkt.arrived_here = t;
    if (auto it = traces_.find(pkt.id); it != traces_.end()) {
      it->second.hops.push_back(HopTimes{t, 0.0, 0.0});
    }
    n.queue.push_back(pkt);
    if (n.queue.size() == 1) start_service(k, t);
  }

  void ground_arrival(std::size_t k, double t) {
    Node& n = nodes_[k];
    const double y = std::isnan(n.last_gen) ? kNaN : t - n.last_gen;
    n.last_gen = t;
    const std::uint64_t id = next_id_++;
    if (id < opt_.trace_packets) {
      PacketRecord rec;
      rec.id = id;
      rec.origin = k;
      rec.t_gen = t;
      rec.interarrival = y;
      traces_.emplace(id, std::move(rec));
    }
    enqueue(k, InFlight{id, k, t, y, t, 0.0, 0.0}, t);
    n.next_arrival = t + n.arrivals.next();
  }

  void depart(std::size_t k, double t) {
    Node& n = nodes_[k];
    touch(n, t);
    InFlight pkt = n.queue.front();
    n.queue.pop_front();
    n.next_departure = kInf;
    if (window_.contains(t)) {
      n.sojourn_sum += t - pkt.arrived_here;
      ++n.departures_in_window;
      if (opt_.interdeparture_node && *opt_.interdeparture_node == k) {
        if (!std::isnan(last_departure_seen_)) interdepartures_.push_back(t - last_departure_seen_);
        last_departure_seen_ = t;
      }
    }
    if (auto it = traces_.find(pkt.id); it != traces_.end()) {
      it->second.hops.back().departure = t;
    }

    if (k + 1 < nodes_.size()) {
      enqueue(k + 1, pkt, t);
    } else {
      deliver(pkt, t);
    }
    if (!n.queue.empty()) start_service(k, t);
  }

  void deliver(const InFlight& pkt, double t) {
    system_age_.deliver(t, pkt.t_gen);
    auto& src = sources_[static_cast<std::size_t>(source_of_node_[pkt.origin])];
    src.age.deliver(t, pkt.t_gen);

    if (auto it = traces_.find(pkt.id); it != traces_.end()) {
      it->second.interdeparture = std::isnan(last_delivery_) ? kNaN : t - last_delivery_;
      trace_.push_back(std::move(it->second));
      traces_.erase(it);
    }
    last_delivery_ = t;

    if (!window_.contains(t)) return;
    const int b = window_.batch_of(t);
    const double total = t - pkt.t_gen;
    delay_.add(b, total);
    wait_.add(b, pkt.wait);
    src.delay.add(b, total);
    ++src.batch_departures[b];
    if (!std::isnan(pkt.interarrival)) {
      ewy_.add(b, pkt.wait * pkt.interarrival);
      src.ewy.add(b, pkt.wait * pkt.interarrival);
    }
  }

  SimResult finish() {
    const double end = window_.end();
    for (auto& n : nodes_) touch(n, end);
    system_age_.advance(end);
    for (auto& s : sources_) s.age.advance(end);

    SimResult r;
    r.seed = opt_.seed;
    r.horizon = opt_.horizon;
    r.warmup = window_.start();
    r.n_departures = delay_.count();
    if (r.n_departures == 0) {
      throw NoDataError("no packets delivered after warmup (horizon " +
                        std::to_string(opt_.horizon) + ")");
    }

    const int nb = window_.batches();
    const double len = window_.length();
    std::vector<double> batch;
    batch.reserve(nb);
    auto age_estimate = [&](const AgeIntegrator& a) {
      batch.clear();
      for (int k = 0; k < nb; ++k) batch.push_back(a.batch_age(k));
      return Estimate{a.total_area() / len, detail::batch_half_width(batch)};
    };

    r.aoi_system = age_estimate(system_age_);
    r.delay = delay_.estimate();
    r.wait = wait_.estimate();
    r.ewy = ewy_.estimate();

    std::vector<double> mixture_batches(nb, 0.0);
    double mixture = 0.0;
    for (const auto& s : sources_) {
      SourceStats st;
      st.origin = s.origin;
      st.departures = s.delay.count();
      st.aoi = age_estimate(s.age);
      st.delay = s.delay.estimate();
      st.ewy = s.ewy.estimate();
      const double w = static_cast<double>(st.departures) / static_cast<double>(r.n_departures);
      mixture += w * st.aoi.mean;
      for (int k = 0; k < nb; ++k) mixture_batches[k] += w * s.age.batch_age(k);
      r.sources.push_back(st);
    }
    r.aoi_mixture = {mixture, detail::batch_half_width(mixture_batches)};

    for (const auto& n : nodes_) {
      NodeStats ns;
      ns.utilization = n.busy / len;
      ns.mean_in_system = n.area / len;
      ns.departures = n.departures_in_window;
      ns.mean_sojourn = n.departures_in_window > 0
                            ? n.sojourn_sum / static_cast<double>(n.departures_in_window)
                            : kNaN;
      r.nodes.push_back(ns);
    }

    std::sort(trace_.begin(), trace_.end(),
              [](const PacketRecord& a, const PacketRecord& b) { return a.id < b.id; });
    r.trace = std::move(trace_);
    r.interdepartures = std::move(interdepartures_);
    return r;
  }

  const SimOptions& opt_;
  Window window_;
  std::vector<Node> nodes_;
  AgeIntegrator system_age_;
  detail::BatchedMean delay_;
  detail::BatchedMean wait_;
  detail::BatchedMean ewy_;
  std::vector<SourceAccumulator> sources_;
  std::vector<int> source_of_node_;
  std::uint64_t next_id_ = 0;
  double last_delivery_ = kNaN;
  double last_departure_seen_ = kNaN;
  std::unordered_map<std::uint64_t, PacketRecord> traces_;
  std::vector<PacketRecord> trace_;
  std::vector<double> interdepartures_;
};

}  // namespace

double PacketRecord::waiting_time() const {
  double w = 0.0;
  for (const auto& h : hops) w += h.service_start - h.arrival;
  return w;
}

double PacketRecord::service_time() const {
  double s = 0.0;
  for (const auto& h : hops) s += h.departure - h.service_start;
  return s;
}

std::vector<double> SimResult::aoi_per_source() const {
  std::vector<double> out;
  for (const auto& s : sources) out.push_back(s.aoi.mean);
  return out;
}

std::vector<double> SimResult::utilization_per_node() const {
  std::vector<double> out;
  for (const auto& n : nodes) out.push_back(n.utilization);
  return out;
}

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

SimResult run(const NetworkSpec& spec, const SimOptions& options) {
  const double warmup = options.effective_warmup();
  if (!(options.horizon > 0.0) || !std::isfinite(options.horizon)) {
    throw InvalidArgument("horizon must be a positive finite time");
  }
  if (!(warmup >= 0.0) || !(warmup < options.horizon)) {
    throw InvalidArgument("warmup must satisfy 0 <= warmup < horizon");
  }
  if (options.batches < 2) throw InvalidArgument("need at least 2 batches");
  if (options.interdeparture_node && *options.interdeparture_node >= spec.size()) {
    throw InvalidArgument("interdeparture node index out of range");
  }
  Engine engine(spec, options);
  return engine.run();
}

SimResult run(const NetworkSpec& spec, std::uint64_t seed, double horizon, double warmup) {
  SimOptions opt;
  opt.seed = seed;
  opt.horizon = horizon;
  opt.warmup = warmup;
  return run(spec, opt);
}

Estimate estimate_ewy(const NetworkSpec& spec, std::uint64_t seed, double horizon,
                      std::optional<double> warmup) {
  if (!spec.single_source()) {
    throw InvalidArgument("estimate_ewy needs a single-source chain (ground traffic at node 1 only)");
  }
  SimOptions opt;
  opt.seed = seed;
  opt.horizon = horizon;
  opt.warmup = warmup;
  const SimResult r = run(spec, opt);
  if (std::isnan(r.ewy.mean)) throw NoDataError("no packet with a predecessor was delivered");
  return r.ewy;
}

}  // namespace tandem::sim
