#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "petlock/coupling_fsm.hpp"
#include "petlock/error.hpp"

namespace petlock::bus {

enum class BusName { main, auxiliary };

inline const char* bus_name(BusName b) { return b == BusName::main ? "main" : "auxiliary"; }

enum class LoadClass { payload, actuator };

struct PowerBus {
  BusName name = BusName::main;
  double voltage_V = 48.0;
  double capacity_W = 500.0;
  double allocated_W = 0.0;
  bool connected = false;
  bool actuator_only = false;  // restrict grants to actuator loads
  std::map<std::uint64_t, double> grants;
  std::uint64_t next_grant = 1;
};

inline PowerBus make_bus(BusName name, double voltage_V, double capacity_W) {
  PowerBus b;
  b.name = name;
  b.voltage_V = voltage_V;
  b.capacity_W = capacity_W;
  return b;
}

inline PowerBus main_bus() { return make_bus(BusName::main, 48.0, 500.0); }
inline PowerBus auxiliary_bus() { return make_bus(BusName::auxiliary, 24.0, 50.0); }

struct PowerGrant {
  bool granted = false;
  std::uint64_t id = 0;
  double watts = 0.0;
  std::string reason;
};

namespace detail {

// Summed in grant order every time, so releasing a grant restores the exact
// value held before it was issued.
inline double sum_grants(const PowerBus& bus) {
  double total = 0.0;
  for (const auto& [id, w] : bus.grants) total += w;
  return total;
}

}  // namespace detail

inline PowerGrant request_power(PowerBus& bus, double watts,
                                LoadClass load = LoadClass::payload) {
  require(bus.connected, ErrorKind::not_connected,
          std::string(bus_name(bus.name)) + " bus is not connected");
  require(std::isfinite(watts) && watts >= 0.0, ErrorKind::parameter, "watts must be >= 0");
  PowerGrant g;
  g.watts = watts;
  if (bus.actuator_only && load != LoadClass::actuator) {
    g.reason = "bus reserved for actuator loads";
    return g;
  }
  // New ids sort last, so this equals the in-order sum after insertion.
  const double total = detail::sum_grants(bus) + watts;
  if (total > bus.capacity_W) {
    g.reason = "capacity exceeded";
    return g;
  }
  const std::uint64_t id = bus.next_grant;
  bus.grants.emplace(id, watts);
  bus.allocated_W = total;
  ++bus.next_grant;
  g.granted = true;
  g.id = id;
  return g;
}

inline bool release(PowerBus& bus, std::uint64_t grant_id) {
  if (bus.grants.erase(grant_id) == 0) return false;
  bus.allocated_W = detail::sum_grants(bus);
  return true;
}

inline double headroom(const PowerBus& bus) { return bus.capacity_W - bus.allocated_W; }

enum class ChannelKind { ethernet, can };
enum class Purpose { payload, interlock };

inline const char* channel_name(ChannelKind k) { return k == ChannelKind::ethernet ? "ethernet" : "can"; }

inline ChannelKind parse_channel(const std::string& s) {
  if (s == "ethernet") return ChannelKind::ethernet;
  if (s == "can") return ChannelKind::can;
  throw Error(ErrorKind::parameter, "unknown channel kind '" + s + "'");
}

struct DataChannel {
  ChannelKind kind;
  Purpose purpose;
  bool link_up;

  bool operator==(const DataChannel&) const = default;
};

/// Payload limits of a single frame, per bus standard.
inline std::size_t max_payload(ChannelKind k) { return k == ChannelKind::can ? 8 : 1500; }

// POGO pin layout: 12 pins at 30 deg pitch, the same 4-signal group repeated
// in each 120 deg sector.
enum class Signal { power_48v, power_24v, ethernet, can };

inline constexpr int kPinCount = 12;
inline constexpr int kPinsPerSector = 4;

inline Signal pin_signal(int pin) {
  static constexpr std::array<Signal, kPinsPerSector> group{Signal::power_48v, Signal::power_24v,
                                                            Signal::ethernet, Signal::can};
  return group[static_cast<std::size_t>(((pin % kPinCount) + kPinCount) % kPinCount % kPinsPerSector)];
}

struct PinContact {
  int pin_a;
  int pin_b;
  Signal signal;
};

struct ChannelSet {
  double main_voltage_V = 0.0;
  double main_capacity_W = 0.0;
  double aux_voltage_V = 0.0;
  double aux_capacity_W = 0.0;
  std::vector<DataChannel> channels;
  std::vector<PinContact> contacts;

  /// Observable assignment, excluding which physical pins carry it.
  bool same_assignment(const ChannelSet& o) const {
    return main_voltage_V == o.main_voltage_V && main_capacity_W == o.main_capacity_W &&
           aux_voltage_V == o.aux_voltage_V && aux_capacity_W == o.aux_capacity_W &&
           channels == o.channels;
  }
};

/// Mates the two pin rings of a Locked interface at one of the three 120 deg
/// rotation slots and reports the resulting buses and channels.
inline ChannelSet connect(const coupling::InterfaceState& state, int rotation_slot) {
  require(state.phase == coupling::Phase::locked, ErrorKind::not_connected,
          std::string("interface is ") + coupling::phase_name(state.phase) + ", not Locked");
  require(rotation_slot >= 0 && rotation_slot <= 2, ErrorKind::parameter,
          "rotation slot must be 0, 1 or 2");
  ChannelSet set;
  std::array<bool, 4> seen{};
  for (int pin_b = 0; pin_b < kPinCount; ++pin_b) {
    const int pin_a = (pin_b + kPinsPerSector * rotation_slot) % kPinCount;
    const Signal sa = pin_signal(pin_a);
    require(sa == pin_signal(pin_b), ErrorKind::not_connected, "pin signals do not match");
    set.contacts.push_back({pin_a, pin_b, sa});
    seen[static_cast<std::size_t>(sa)] = true;
  }
  if (seen[0]) {
    set.main_voltage_V = 48.0;
    set.main_capacity_W = 500.0;
  }
  if (seen[1]) {
    set.aux_voltage_V = 24.0;
    set.aux_capacity_W = 50.0;
  }
  if (seen[2]) set.channels.push_back({ChannelKind::ethernet, Purpose::payload, true});
  if (seen[3]) set.channels.push_back({ChannelKind::can, Purpose::interlock, true});
  return set;
}

struct Frame {
  ChannelKind kind = ChannelKind::ethernet;
  std::string source;
  std::string dest;
  std::vector<std::uint8_t> payload;
  double timestamp_s = 0.0;
};

struct DeliveryReport {
  bool delivered = false;
  int hops = 0;
  double latency_s = 0.0;
  double arrival_s = 0.0;
  std::vector<int> path;  // edge ids
};

/// Routes a frame through Locked interfaces of `topology`, which must provide
/// has_module(id) and locked_path(src, dst) -> optional<vector<int>>.
/// CAN carries interface-to-interface traffic only, so it never crosses
/// more than one interface.
template <class Topology>
DeliveryReport send_frame(const Frame& f, const Topology& topology, double per_hop_delay_s = 1e-3) {
  require(topology.has_module(f.source), ErrorKind::unknown_entity,
          "unknown source module '" + f.source + "'");
  require(topology.has_module(f.dest), ErrorKind::unknown_entity,
          "unknown destination module '" + f.dest + "'");
  require(f.payload.size() <= max_payload(f.kind), ErrorKind::framing,
          std::string(channel_name(f.kind)) + " payload of " + std::to_string(f.payload.size()) +
              " bytes exceeds " + std::to_string(max_payload(f.kind)));
  const std::optional<std::vector<int>> path = topology.locked_path(f.source, f.dest);
  require(path.has_value(), ErrorKind::unreachable,
          "no Locked path from '" + f.source + "' to '" + f.dest + "'");
  require(f.kind != ChannelKind::can || path->size() <= 1, ErrorKind::purpose,
          "CAN frames are limited to adjacent interfaces");
  DeliveryReport r;
  r.delivered = true;
  r.path = *path;
  r.hops = static_cast<int>(path->size());
  r.latency_s = r.hops * per_hop_delay_s;
  r.arrival_s = f.timestamp_s + r.latency_s;
  return r;
}

}  // namespace petlock::bus
