// Copyright 2026 The stricteq Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STRICTEQ_IO_HPP_
#define STRICTEQ_IO_HPP_

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "stricteq/clearing.hpp"
#include "stricteq/noloss.hpp"
#include "stricteq/verify.hpp"

namespace stricteq::io {

using nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline std::pair<int, int> line_col(const std::string& text, size_t byte) {
  int line = 1;
  int col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": malformed JSON");
  }
}

template <typename N>
N parse_scalar(const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto v = scalar_traits<N>::parse(j.template get<std::string>());
    if (!v) fail(path, "cannot parse number \"" + j.template get<std::string>() + "\"");
    return *v;
  }
  if (j.is_number_integer()) {
    return scalar_traits<N>::from_long(j.template get<long long>());
  }
  if (j.is_number_float()) {
    if constexpr (scalar_traits<N>::exact) {
      fail(path, "floating literal not allowed in exact mode; quote it as a "
                 "rational string");
    } else {
      return j.template get<double>();
    }
  }
  fail(path, "expected a number or numeric string");
}

template <typename N>
std::vector<N> parse_vector(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<N> out;
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_scalar<N>(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

template <typename N>
Mat<N> parse_matrix(const json& j, const std::string& path, int rows,
                    int cols) {
  if (!j.is_array()) fail(path, "expected an array of rows");
  if (rows >= 0 && static_cast<int>(j.size()) != rows) {
    fail(path, "expected " + std::to_string(rows) + " rows, got " +
                   std::to_string(j.size()));
  }
  std::vector<std::vector<N>> data;
  for (size_t i = 0; i < j.size(); ++i) {
    auto row = parse_vector<N>(j[i], path + "[" + std::to_string(i) + "]");
    if (cols >= 0 && static_cast<int>(row.size()) != cols) {
      fail(path + "[" + std::to_string(i) + "]",
           "expected " + std::to_string(cols) + " entries, got " +
               std::to_string(row.size()));
    }
    data.push_back(std::move(row));
  }
  if (data.empty()) {
    return Mat<N>(0, cols >= 0 ? cols : 0);
  }
  return Mat<N>::from_rows(data);
}

template <typename N>
std::string str(const N& v) {
  return scalar_traits<N>::to_string(v);
}

template <typename N>
json vec_json(const std::vector<N>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(str(x));
  return out;
}

template <typename N>
json map_json(const std::map<std::string, N>& v) {
  json out = json::object();
  for (const auto& [k, x] : v) out[k] = str(x);
  return out;
}

}  // namespace detail

/// Instance schema (version 1):
///   {"schema":1, "commodities":["g"],
///    "convex_bids":[{"id":"b1","c":[...],"Q":[[...]],"G":[[...]],"h":[...]}],
///    "mi_bids":[{"id":"x1","c":[...],"Q":[[...]],"A":[[...]],"a":[...],"z":1}]}
/// Numbers are strings ("7", "-3/4", "2.5") or plain integers.
template <typename N>
model::Auction<N> load_auction(const std::string& text) {
  const json root = detail::parse_text(text);
  if (!root.is_object()) detail::fail("$", "expected a JSON object");
  if (!root.contains("schema") || !root["schema"].is_number_integer() ||
      root["schema"].get<int>() != 1) {
    detail::fail("schema", "expected the integer 1");
  }
  if (!root.contains("commodities") || !root["commodities"].is_array() ||
      root["commodities"].empty()) {
    detail::fail("commodities", "expected a nonempty array of names");
  }
  model::Auction<N> auction;
  std::set<std::string> seen;
  for (size_t t = 0; t < root["commodities"].size(); ++t) {
    const auto& c = root["commodities"][t];
    const std::string path = "commodities[" + std::to_string(t) + "]";
    if (!c.is_string()) detail::fail(path, "expected a string");
    const auto name = c.get<std::string>();
    if (!seen.insert(name).second) detail::fail(path, "duplicate commodity");
    auction.space.names.push_back(name);
  }
  const int m = auction.space.dimension();

  std::set<std::string> ids;
  auto common = [&](const json& b, const std::string& path, auto& bid) -> int {
    if (!b.is_object()) detail::fail(path, "expected an object");
    if (!b.contains("id") || !b["id"].is_string()) {
      detail::fail(path + ".id", "expected a string");
    }
    bid.id = b["id"].get<std::string>();
    if (bid.id.empty()) detail::fail(path + ".id", "must be nonempty");
    if (!ids.insert(bid.id).second) detail::fail(path + ".id", "duplicate id");
    if (!b.contains("c")) detail::fail(path + ".c", "missing");
    bid.c = detail::parse_vector<N>(b["c"], path + ".c");
    const int n = static_cast<int>(bid.c.size());
    if (n == 0) detail::fail(path + ".c", "bid needs at least one variable");
    if (!b.contains("Q")) detail::fail(path + ".Q", "missing");
    bid.Q = detail::parse_matrix<N>(b["Q"], path + ".Q", m, n);
    return n;
  };

  if (root.contains("convex_bids")) {
    if (!root["convex_bids"].is_array()) {
      detail::fail("convex_bids", "expected an array");
    }
    for (size_t i = 0; i < root["convex_bids"].size(); ++i) {
      const auto& b = root["convex_bids"][i];
      const std::string path = "convex_bids[" + std::to_string(i) + "]";
      model::ConvexBid<N> bid;
      const int n = common(b, path, bid);
      if (!b.contains("G")) detail::fail(path + ".G", "missing");
      bid.G = detail::parse_matrix<N>(b["G"], path + ".G", -1, n);
      if (!b.contains("h")) detail::fail(path + ".h", "missing");
      bid.h = detail::parse_vector<N>(b["h"], path + ".h");
      if (static_cast<int>(bid.h.size()) != bid.G.rows()) {
        detail::fail(path + ".h", "length must match rows of G");
      }
      auction.convex_bids.push_back(std::move(bid));
    }
  }
  if (root.contains("mi_bids")) {
    if (!root["mi_bids"].is_array()) detail::fail("mi_bids", "expected an array");
    for (size_t i = 0; i < root["mi_bids"].size(); ++i) {
      const auto& b = root["mi_bids"][i];
      const std::string path = "mi_bids[" + std::to_string(i) + "]";
      model::MixedIntegerBid<N> bid;
      const int n = common(b, path, bid);
      if (!b.contains("A")) detail::fail(path + ".A", "missing");
      bid.A = detail::parse_matrix<N>(b["A"], path + ".A", -1, n);
      if (!b.contains("a")) detail::fail(path + ".a", "missing");
      bid.a = detail::parse_vector<N>(b["a"], path + ".a");
      if (static_cast<int>(bid.a.size()) != bid.A.rows()) {
        detail::fail(path + ".a", "length must match rows of A");
      }
      if (!b.contains("z") || !b["z"].is_number_integer()) {
        detail::fail(path + ".z", "expected an integer");
      }
      bid.z = b["z"].get<int>();
      if (bid.z < 1 || bid.z > n) {
        detail::fail(path + ".z", "must be between 1 and the variable count");
      }
      auction.mi_bids.push_back(std::move(bid));
    }
  }
  if (auction.num_bids() == 0) detail::fail("$", "instance has no bids");
  auction.canonicalize();
  return auction;
}

template <typename N>
model::Auction<N> load_auction_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ParseError(filename + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_auction<N>(buf.str());
}

template <typename N>
json auction_to_json(const model::Auction<N>& auction) {
  json root;
  root["schema"] = 1;
  root["commodities"] = auction.space.names;
  auto matrix_json = [](const Mat<N>& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < M.cols(); ++j) row.push_back(detail::str(M(i, j)));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  json convex = json::array();
  for (const auto& b : auction.convex_bids) {
    json j;
    j["id"] = b.id;
    j["c"] = detail::vec_json(b.c);
    j["Q"] = matrix_json(b.Q);
    j["G"] = matrix_json(b.G);
    j["h"] = detail::vec_json(b.h);
    convex.push_back(std::move(j));
  }
  json mixed = json::array();
  for (const auto& b : auction.mi_bids) {
    json j;
    j["id"] = b.id;
    j["c"] = detail::vec_json(b.c);
    j["Q"] = matrix_json(b.Q);
    j["A"] = matrix_json(b.A);
    j["a"] = detail::vec_json(b.a);
    j["z"] = b.z;
    mixed.push_back(std::move(j));
  }
  root["convex_bids"] = std::move(convex);
  root["mi_bids"] = std::move(mixed);
  return root;
}

template <typename N>
json window_json(const clearing::PriceWindow<N>& w) {
  json lower = json::array();
  json upper = json::array();
  for (const auto& v : w.lower) {
    lower.push_back(v ? json(detail::str(*v)) : json(nullptr));
  }
  for (const auto& v : w.upper) {
    upper.push_back(v ? json(detail::str(*v)) : json(nullptr));
  }
  return json{{"lower", std::move(lower)}, {"upper", std::move(upper)}};
}

template <typename N>
json allocation_json(const model::Allocation<N>& alloc) {
  json out = json::object();
  for (const auto& [id, d] : alloc) out[id] = detail::vec_json(d);
  return out;
}

template <typename N>
json iterations_json(const std::vector<clearing::IterationRecord<N>>& iters) {
  json out = json::array();
  for (const auto& it : iters) {
    json j;
    j["iter"] = it.iter;
    j["welfare"] = detail::str(it.welfare);
    j["gap"] = detail::str(it.gap);
    j["cut"] = it.cut;
    json lam = json::object();
    for (const auto& [id, v] : it.lambda) lam[id] = v;
    j["lambda"] = std::move(lam);
    out.push_back(std::move(j));
  }
  return out;
}

template <typename N>
std::string iteration_log_lines(
    const std::vector<clearing::IterationRecord<N>>& iters) {
  std::string out;
  for (const auto& j : iterations_json(iters)) {
    out += j.dump();
    out += '\n';
  }
  return out;
}

template <typename N>
std::string clearing_result_json(const std::string& mode,
                                 const clearing::ClearingOutcome<N>& o) {
  json root;
  root["schema"] = 1;
  root["model"] = mode;
  root["arithmetic"] = scalar_traits<N>::mode_name();
  root["status"] = clearing::to_string(o.status);
  root["detail"] = o.detail;
  root["iterations"] = iterations_json(o.iterations);
  if (o.status == clearing::ClearingStatus::infeasible) {
    return root.dump(2) + "\n";
  }
  root["welfare"] = detail::str(o.welfare);
  root["allocation"] = allocation_json(o.allocation);
  if (o.lambda) {
    json lam = json::object();
    for (const auto& [id, v] : *o.lambda) lam[id] = v;
    root["lambda"] = std::move(lam);
  }
  if (o.prices) root["prices"] = detail::vec_json(*o.prices);
  if (o.window) root["window"] = window_json(*o.window);
  if (o.certificate) root["gap"] = detail::str(o.certificate->gap);
  if (o.settlement) {
    root["values"] = detail::map_json(o.settlement->values);
    root["transfers"] = detail::map_json(o.settlement->transfers);
    root["surpluses"] = detail::map_json(o.settlement->surpluses);
  }
  return root.dump(2) + "\n";
}

template <typename N>
std::string noloss_result_json(const std::string& mode,
                               const noloss::NoLossOutcome<N>& o) {
  json root;
  root["schema"] = 1;
  root["model"] = mode;
  root["arithmetic"] = scalar_traits<N>::mode_name();
  root["status"] = noloss::to_string(o.status);
  root["method"] = o.method;
  root["detail"] = o.detail;
  root["candidates"] = o.candidates;
  if (o.status == noloss::NoLossStatus::infeasible) {
    return root.dump(2) + "\n";
  }
  root["welfare"] = detail::str(o.welfare);
  root["allocation"] = allocation_json(o.allocation);
  if (o.prices) root["prices"] = detail::vec_json(*o.prices);
  if (o.window) root["window"] = window_json(*o.window);
  if (o.settlement) {
    root["values"] = detail::map_json(o.settlement->values);
    root["transfers"] = detail::map_json(o.settlement->transfers);
    root["surpluses"] = detail::map_json(o.settlement->surpluses);
  }
  return root.dump(2) + "\n";
}

template <typename N>
std::string efficiency_json(const noloss::EfficiencyReport<N>& r) {
  json root;
  root["schema"] = 1;
  root["check"] = "efficiency";
  root["efficient"] = r.efficient;
  root["baseline_welfare"] = detail::str(r.baseline_welfare);
  root["candidates"] = r.candidates;
  if (r.dominating_welfare) {
    root["dominating_welfare"] = detail::str(*r.dominating_welfare);
  }
  if (r.witness) root["witness_allocation"] = allocation_json(*r.witness);
  if (r.witness_prices) {
    root["witness_prices"] = detail::vec_json(*r.witness_prices);
  }
  return root.dump(2) + "\n";
}

inline std::string certification_json(const verify::CertificationReport& r) {
  json root;
  root["schema"] = 1;
  root["check"] = "certification";
  root["pass"] = r.pass;
  json items = json::array();
  for (const auto& item : r.items) {
    items.push_back(json{{"name", item.name},
                         {"pass", item.pass},
                         {"detail", item.detail}});
  }
  root["items"] = std::move(items);
  return root.dump(2) + "\n";
}

/// Result fields needed to re-certify a pitch independently.
template <typename N>
struct ParsedResult {
  std::string model;
  std::string status;
  N welfare = scalar_traits<N>::zero();
  model::Allocation<N> allocation;
  std::optional<model::PriceVector<N>> prices;
  std::optional<clearing::LambdaSelection> lambda;
};

template <typename N>
ParsedResult<N> load_result(const std::string& text) {
  const json root = detail::parse_text(text);
  if (!root.is_object()) detail::fail("$", "expected a JSON object");
  ParsedResult<N> out;
  if (!root.contains("model") || !root["model"].is_string()) {
    detail::fail("model", "expected a string");
  }
  out.model = root["model"].get<std::string>();
  if (!root.contains("status") || !root["status"].is_string()) {
    detail::fail("status", "expected a string");
  }
  out.status = root["status"].get<std::string>();
  if (root.contains("welfare")) {
    out.welfare = detail::parse_scalar<N>(root["welfare"], "welfare");
  }
  if (root.contains("allocation")) {
    if (!root["allocation"].is_object()) {
      detail::fail("allocation", "expected an object");
    }
    for (const auto& [id, arr] : root["allocation"].items()) {
      out.allocation[id] =
          detail::parse_vector<N>(arr, "allocation." + id);
    }
  }
  if (root.contains("prices")) {
    out.prices = detail::parse_vector<N>(root["prices"], "prices");
  }
  if (root.contains("lambda")) {
    if (!root["lambda"].is_object()) detail::fail("lambda", "expected an object");
    clearing::LambdaSelection sel;
    for (const auto& [id, v] : root["lambda"].items()) {
      if (!v.is_number_integer()) detail::fail("lambda." + id, "expected 0 or 1");
      sel[id] = v.template get<int>();
    }
    out.lambda = std::move(sel);
  }
  return out;
}

template <typename N>
ParsedResult<N> load_result_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ParseError(filename + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_result<N>(buf.str());
}

/// Per-bid settlement table; one row per bid sorted by id, then a
/// totals row.
template <typename N>
std::string settlement_csv(const model::Auction<N>& auction,
                           const model::SettlementRecord<N>& settle,
                           const model::Allocation<N>& alloc) {
  std::ostringstream out;
  out << "id,kind,delta";
  for (const auto& name : auction.space.names) out << ",qty_" << name;
  out << ",value,transfer,surplus\n";
  auto emit = [&](const auto& bid, const char* kind) {
    out << bid.id << ',' << kind << ',';
    const auto& d = alloc.at(bid.id);
    for (size_t j = 0; j < d.size(); ++j) {
      if (j) out << ';';
      out << detail::str(d[j]);
    }
    const auto u = bid.Q.apply(d);
    for (const auto& q : u) out << ',' << detail::str(q);
    out << ',' << detail::str(settle.values.at(bid.id));
    out << ',' << detail::str(settle.transfers.at(bid.id));
    out << ',' << detail::str(settle.surpluses.at(bid.id)) << '\n';
  };
  // Auction is canonicalized; interleave the two lists by id.
  size_t ci = 0;
  size_t mi = 0;
  while (ci < auction.convex_bids.size() || mi < auction.mi_bids.size()) {
    const bool pick_convex =
        mi == auction.mi_bids.size() ||
        (ci < auction.convex_bids.size() &&
         auction.convex_bids[ci].id < auction.mi_bids[mi].id);
    if (pick_convex) {
      emit(auction.convex_bids[ci++], "convex");
    } else {
      emit(auction.mi_bids[mi++], "mixed");
    }
  }
  N value_sum = scalar_traits<N>::zero();
  N transfer_sum = scalar_traits<N>::zero();
  N surplus_sum = scalar_traits<N>::zero();
  for (const auto& [id, v] : settle.values) value_sum += v;
  for (const auto& [id, v] : settle.transfers) transfer_sum += v;
  for (const auto& [id, v] : settle.surpluses) surplus_sum += v;
  out << "TOTAL,,";
  for (const auto& r : settle.clearing_residual) out << ',' << detail::str(r);
  out << ',' << detail::str(value_sum) << ',' << detail::str(transfer_sum)
      << ',' << detail::str(surplus_sum) << '\n';
  return out.str();
}

}  // namespace stricteq::io

#endif  // STRICTEQ_IO_HPP_
