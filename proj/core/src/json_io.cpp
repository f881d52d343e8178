#include "qebt/json_io.hpp"

#include <cstdio>

#include "qebt/errors.hpp"

namespace qebt {

namespace {

Eigen::Vector3d vector3_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw InvalidChannel(std::string(what) + " must be an array of 3 numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

Json vector_to_json(const Eigen::Vector3d& v) {
  return Json::array({v(0), v(1), v(2)});
}

Json matrix_to_json(const Eigen::Matrix3d& m) {
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r) {
    rows.push_back(Json::array({m(r, 0), m(r, 1), m(r, 2)}));
  }
  return rows;
}

Json matrix_to_json(const Eigen::Matrix4d& m) {
  Json rows = Json::array();
  for (int r = 0; r < 4; ++r) {
    rows.push_back(Json::array({m(r, 0), m(r, 1), m(r, 2), m(r, 3)}));
  }
  return rows;
}

PauliTransferMatrix channel_from_json(const Json& j) {
  const bool has_params = j.contains("t") || j.contains("lambda");
  const bool has_matrix = j.contains("matrix");
  if (has_params == has_matrix) {
    throw InvalidChannel(
        "channel JSON needs either {\"t\",\"lambda\"} or {\"matrix\"}");
  }
  PauliTransferMatrix channel;
  if (has_matrix) {
    const Json& rows = j.at("matrix");
    if (!rows.is_array() || rows.size() != 4) {
      throw InvalidChannel("matrix must be 4 rows of 4 numbers");
    }
    for (int r = 0; r < 4; ++r) {
      if (!rows[r].is_array() || rows[r].size() != 4) {
        throw InvalidChannel("matrix must be 4 rows of 4 numbers");
      }
      for (int c = 0; c < 4; ++c) channel.entries(r, c) = rows[r][c].get<double>();
    }
    if (!channel.trace_preserving()) {
      throw InvalidChannel("matrix row 0 must be (1,0,0,0)");
    }
  } else {
    if (!j.contains("t") || !j.contains("lambda")) {
      throw InvalidChannel("channel JSON needs both \"t\" and \"lambda\"");
    }
    channel.entries.setZero();
    channel.entries(0, 0) = 1.0;
    const Eigen::Vector3d t = vector3_from_json(j.at("t"), "t");
    const Eigen::Vector3d lambda = vector3_from_json(j.at("lambda"), "lambda");
    for (int k = 0; k < 3; ++k) {
      channel.entries(k + 1, 0) = t(k);
      channel.entries(k + 1, k + 1) = lambda(k);
    }
  }
  return channel;
}

Json channel_to_json(const PauliTransferMatrix& channel) {
  Json j;
  j["matrix"] = matrix_to_json(channel.entries);
  return j;
}

Json canonical_to_json(const CanonicalForm& form) {
  Json j;
  j["t"] = vector_to_json(form.t);
  j["lambda"] = vector_to_json(form.lambda);
  j["rot_out"] = matrix_to_json(form.rot_out);
  j["rot_in"] = matrix_to_json(form.rot_in);
  return j;
}

HolevoEnsemble ensemble_from_json(const Json& j) {
  if (!j.contains("items") || !j.at("items").is_array()) {
    throw InvalidEnsemble("ensemble JSON needs an \"items\" array");
  }
  HolevoEnsemble ensemble;
  for (const Json& item : j.at("items")) {
    HolevoItem entry;
    entry.w = vector3_from_json(item.at("w"), "w");
    entry.u0 = item.at("u0").get<double>();
    entry.u = vector3_from_json(item.at("u"), "u");
    ensemble.items.push_back(entry);
  }
  return ensemble;
}

Json ensemble_to_json(const HolevoEnsemble& ensemble) {
  Json items = Json::array();
  for (const HolevoItem& item : ensemble.items) {
    Json entry;
    entry["w"] = vector_to_json(item.w);
    entry["u0"] = item.u0;
    entry["u"] = vector_to_json(item.u);
    items.push_back(entry);
  }
  Json j;
  j["items"] = items;
  return j;
}

Json choi_to_json(const ChoiMatrix& choi) {
  Json rows = Json::array();
  for (int r = 0; r < 4; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 4; ++c) {
      row.push_back(Json::array(
          {choi.entries(r, c).real(), choi.entries(r, c).imag()}));
    }
    rows.push_back(row);
  }
  Json j;
  j["choi"] = rows;
  return j;
}

Json decomposition_to_json(const CqDecomposition& decomposition) {
  Json components = Json::array();
  for (size_t i = 0; i < decomposition.components.size(); ++i) {
    const CqComponent& c = decomposition.components[i];
    Json entry;
    entry["weight"] = decomposition.weights[i];
    entry["t"] = vector_to_json(c.t);
    entry["lambda"] = c.lambda;
    entry["axis_out"] = vector_to_json(c.axis_out);
    entry["axis_in"] = vector_to_json(c.axis_in);
    components.push_back(entry);
  }
  Json j;
  j["residual"] = decomposition.residual;
  j["n_components"] = decomposition.components.size();
  j["components"] = components;
  return j;
}

std::string format17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

void dump_value(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        out += Json(it.key()).dump();
        out += ": ";
        dump_value(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line; nested structures get one
      // element per line.
      bool scalar_only = true;
      for (const Json& item : j) {
        if (item.is_object() || item.is_array()) scalar_only = false;
      }
      out += "[";
      bool first = true;
      for (const Json& item : j) {
        if (!first) out += scalar_only ? ", " : ",";
        if (!scalar_only) out += "\n" + pad_in;
        first = false;
        dump_value(item, out, indent, depth + 1);
      }
      if (!scalar_only) out += "\n" + pad;
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += format17(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump17(const Json& j, int indent) {
  std::string out;
  dump_value(j, out, indent, 0);
  return out;
}

}  // namespace qebt
