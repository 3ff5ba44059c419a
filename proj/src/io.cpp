#include "qdec/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qdec/errors.hpp"

namespace qdec::io {

using nlohmann::json;

namespace {

struct Line {
  std::string text;
  std::size_t number;  // 1-based in the source
};

// Strips comments and blank lines, keeping source line numbers.
std::vector<Line> significant_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto begin = raw.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = raw.find_last_not_of(" \t\r");
    out.push_back({raw.substr(begin, end - begin + 1), number});
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::size_t parse_index(const std::string& token, const std::string& origin, std::size_t line) {
  std::size_t value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw parse_error(origin, line, "expected an integer, got '" + token + "'");
  return value;
}

std::vector<std::size_t> parse_index_list(const std::string& field, const std::string& origin,
                                          std::size_t line) {
  std::vector<std::size_t> out;
  if (field.empty() || field == "-") return out;
  for (const std::string& tok : split(field, ','))
    out.push_back(parse_index(tok, origin, line));
  return out;
}

json matrix_to_json(const BitMatrix& m, bool dense) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  if (dense) {
    j["dense"] = m.to_strings();
  } else {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row_vector(r).support());
    j["sparse"] = std::move(rows);
  }
  return j;
}

BitMatrix matrix_from_json(const json& j, const std::string& origin) {
  if (!j.contains("rows") || !j.contains("cols"))
    throw parse_error(origin + ": matrix object missing rows/cols");
  BitMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  if (j.contains("dense")) {
    const auto rows = j.at("dense").get<std::vector<std::string>>();
    if (rows.size() != m.rows()) throw parse_error(origin + ": dense row count mismatch");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols()) throw parse_error(origin + ": dense row width mismatch");
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (rows[r][c] == '1') m.set(r, c, true);
    }
  } else if (j.contains("sparse")) {
    const auto& rows = j.at("sparse");
    if (rows.size() != m.rows()) throw parse_error(origin + ": sparse row count mismatch");
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& c : rows[r]) {
        const std::size_t col = c.get<std::size_t>();
        if (col >= m.cols()) throw parse_error(origin + ": column index out of range");
        m.set(r, col, true);
      }
  } else {
    throw parse_error(origin + ": matrix object has neither dense nor sparse payload");
  }
  return m;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write " + path);
  out << content;
  if (!out) throw io_error("write failed for " + path);
}

BitMatrix parse_matrix(const std::string& text, const std::string& origin) {
  const auto lines = significant_lines(text);
  if (lines.empty()) throw parse_error(origin + ": empty matrix file");
  std::istringstream header(lines[0].text);
  std::size_t rows = 0, cols = 0;
  std::string mode;
  if (!(header >> rows >> cols)) throw parse_error(origin, lines[0].number, "bad header, expected 'rows cols'");
  header >> mode;
  const bool sparse = mode == "sparse";
  if (!mode.empty() && !sparse) throw parse_error(origin, lines[0].number, "unknown mode '" + mode + "'");
  if (lines.size() != rows + 1)
    throw parse_error(origin + ": expected " + std::to_string(rows) + " rows, got " +
                      std::to_string(lines.size() - 1));
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Line& line = lines[r + 1];
    if (sparse) {
      if (line.text == "-") continue;
      std::istringstream row(line.text);
      std::string tok;
      while (row >> tok) {
        const std::size_t c = parse_index(tok, origin, line.number);
        if (c >= cols) throw parse_error(origin, line.number, "column index out of range");
        m.set(r, c, true);
      }
    } else {
      if (line.text.size() != cols)
        throw parse_error(origin, line.number, "expected " + std::to_string(cols) + " bits");
      for (std::size_t c = 0; c < cols; ++c) {
        if (line.text[c] == '1')
          m.set(r, c, true);
        else if (line.text[c] != '0')
          throw parse_error(origin, line.number, "row bits must be '0' or '1'");
      }
    }
  }
  return m;
}

BitMatrix read_matrix(const std::string& path) { return parse_matrix(read_file(path), path); }

void write_matrix_dense(const BitMatrix& m, const std::string& path) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (const std::string& row : m.to_strings()) out += row + "\n";
  write_file(path, out);
}

void write_matrix_sparse(const BitMatrix& m, const std::string& path) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " sparse\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto support = m.row_vector(r).support();
    if (support.empty()) {
      out += "-\n";
      continue;
    }
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(support[i]);
    }
    out += '\n';
  }
  write_file(path, out);
}

std::vector<Fault> parse_fault_list(const std::string& text, const std::string& origin) {
  const auto lines = significant_lines(text);
  if (lines.empty()) throw parse_error(origin + ": empty fault list");

  std::size_t detectors = 0, observables = 0;
  bool have_det = false, have_obs = false;
  {
    std::istringstream header(lines[0].text);
    std::string tok;
    while (header >> tok) {
      if (tok.rfind("detectors=", 0) == 0) {
        detectors = parse_index(tok.substr(10), origin, lines[0].number);
        have_det = true;
      } else if (tok.rfind("observables=", 0) == 0) {
        observables = parse_index(tok.substr(12), origin, lines[0].number);
        have_obs = true;
      } else {
        throw parse_error(origin, lines[0].number, "unexpected header token '" + tok + "'");
      }
    }
  }
  if (!have_det || !have_obs)
    throw parse_error(origin, lines[0].number, "header must declare detectors= and observables=");

  std::vector<Fault> faults;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    Fault f;
    f.detectors = BitVector(detectors);
    f.logical = BitVector(observables);
    bool have_p = false;
    std::istringstream row(line.text);
    std::string tok;
    while (row >> tok) {
      if (tok.rfind("p=", 0) == 0) {
        try {
          f.probability = std::stod(tok.substr(2));
        } catch (const std::exception&) {
          throw parse_error(origin, line.number, "bad probability '" + tok.substr(2) + "'");
        }
        have_p = true;
      } else if (tok.rfind("d=", 0) == 0) {
        for (std::size_t idx : parse_index_list(tok.substr(2), origin, line.number)) {
          if (idx >= detectors) throw parse_error(origin, line.number, "detector index out of range");
          f.detectors.set(idx, true);
        }
      } else if (tok.rfind("l=", 0) == 0) {
        for (std::size_t idx : parse_index_list(tok.substr(2), origin, line.number)) {
          if (idx >= observables)
            throw parse_error(origin, line.number, "observable index out of range");
          f.logical.set(idx, true);
        }
      } else {
        throw parse_error(origin, line.number, "unexpected token '" + tok + "'");
      }
    }
    if (!have_p) throw parse_error(origin, line.number, "fault line missing p=");
    if (!(f.probability > 0.0 && f.probability < 1.0))
      throw parse_error(origin, line.number, "probability must lie in (0,1)");
    faults.push_back(std::move(f));
  }
  if (faults.empty()) throw parse_error(origin + ": no faults");
  return faults;
}

std::vector<Fault> read_fault_list(const std::string& path) {
  return parse_fault_list(read_file(path), path);
}

DecodingModel load_fault_list(const std::string& path, MergePolicy policy) {
  DecodingModel model = merge_faults(read_fault_list(path), policy);
  model.name = path;
  return model;
}

void write_fault_list(const std::vector<Fault>& faults, std::size_t detectors,
                      std::size_t observables, const std::string& path) {
  std::string out =
      "detectors=" + std::to_string(detectors) + " observables=" + std::to_string(observables) + "\n";
  char buf[48];
  for (const Fault& f : faults) {
    std::snprintf(buf, sizeof(buf), "p=%.17g", f.probability);
    out += buf;
    auto append_list = [&out](const char* prefix, const std::vector<std::size_t>& idx) {
      out += prefix;
      if (idx.empty()) {
        out += '-';
        return;
      }
      for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(idx[i]);
      }
    };
    append_list(" d=", f.detectors.support());
    append_list(" l=", f.logical.support());
    out += '\n';
  }
  write_file(path, out);
}

std::string model_to_json(const DecodingModel& model, bool dense) {
  json j;
  j["detectors"] = model.detectors();
  j["columns"] = model.columns();
  j["observables"] = model.observables();
  j["rounds"] = model.rounds;
  j["name"] = model.name;
  j["h_dec"] = matrix_to_json(model.h_dec, dense);
  j["logical_effects"] = matrix_to_json(model.logical_effects, dense);
  j["priors"] = model.priors;
  if (!model.labels.empty()) j["labels"] = model.labels;
  if (!model.warnings.empty()) j["warnings"] = model.warnings;
  j["digest"] = model.digest();
  return j.dump(2);
}

DecodingModel model_from_json(const std::string& json_text, const std::string& origin) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw parse_error(origin + ": " + e.what());
  }
  try {
    DecodingModel model;
    model.h_dec = matrix_from_json(j.at("h_dec"), origin);
    model.logical_effects = matrix_from_json(j.at("logical_effects"), origin);
    model.priors = j.at("priors").get<std::vector<double>>();
    model.rounds = j.value("rounds", std::size_t{1});
    model.name = j.value("name", std::string{});
    if (j.contains("labels")) model.labels = j.at("labels").get<std::vector<std::string>>();
    if (j.contains("warnings")) model.warnings = j.at("warnings").get<std::vector<std::string>>();
    model.finalize();
    return model;
  } catch (const json::exception& e) {
    throw parse_error(origin + ": " + e.what());
  }
}

void save_model(const DecodingModel& model, const std::string& path) {
  write_file(path, model_to_json(model));
}

DecodingModel load_model(const std::string& path) {
  return model_from_json(read_file(path), path);
}

void save_code(const CSSCode& code, const std::string& base) {
  write_matrix_dense(code.h_x, base + ".hx.txt");
  write_matrix_dense(code.h_z, base + ".hz.txt");
  json j;
  j["n"] = code.n;
  j["k"] = code.k;
  j["d"] = code.d;
  j["name"] = code.name;
  j["h_x"] = base + ".hx.txt";
  j["h_z"] = base + ".hz.txt";
  j["logicals_x"] = code.logicals_x.to_strings();
  j["logicals_z"] = code.logicals_z.to_strings();
  if (!code.warnings.empty()) j["warnings"] = code.warnings;
  write_file(base + ".json", j.dump(2));
}

CSSCode load_code(const std::string& json_path) {
  json j;
  try {
    j = json::parse(read_file(json_path));
  } catch (const json::exception& e) {
    throw parse_error(json_path + ": " + e.what());
  }
  try {
    const BitMatrix h_x = read_matrix(j.at("h_x").get<std::string>());
    const BitMatrix h_z = read_matrix(j.at("h_z").get<std::string>());
    const BitMatrix lx = BitMatrix::from_rows(j.value("logicals_x", std::vector<std::string>{}));
    const BitMatrix lz = BitMatrix::from_rows(j.value("logicals_z", std::vector<std::string>{}));
    CSSCode code = validate_css(h_x, h_z, lx, lz, j.value("d", std::size_t{0}),
                                j.value("name", std::string{}));
    return code;
  } catch (const json::exception& e) {
    throw parse_error(json_path + ": " + e.what());
  }
}

BitVector read_syndrome(const std::string& path, std::size_t detectors) {
  const auto lines = significant_lines(read_file(path));
  if (lines.empty()) throw parse_error(path + ": empty syndrome file");
  if (lines[0].text == "sparse") {
    BitVector s(detectors);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      std::istringstream row(lines[i].text);
      std::string tok;
      while (row >> tok) {
        const std::size_t idx = parse_index(tok, path, lines[i].number);
        if (idx >= detectors) throw parse_error(path, lines[i].number, "detector index out of range");
        s.set(idx, true);
      }
    }
    return s;
  }
  if (lines.size() != 1)
    throw parse_error(path + ": dense syndrome must be a single '0'/'1' line");
  if (lines[0].text.size() != detectors)
    throw parse_error(path, lines[0].number,
                      "expected " + std::to_string(detectors) + " bits, got " +
                          std::to_string(lines[0].text.size()));
  return BitVector::from_string(lines[0].text);
}

}  // namespace qdec::io
