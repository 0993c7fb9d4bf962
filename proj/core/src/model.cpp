#include "skipgram/model.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "skipgram/errors.hpp"

namespace skipgram {

const char* objective_name(Objective objective) {
  switch (objective) {
    case Objective::kNegativeSampling: return "neg";
    case Objective::kHierarchicalSoftmax: return "hs";
    case Objective::kFullSoftmax: return "softmax";
  }
  return "?";
}

Objective objective_from_name(const std::string& name) {
  if (name == "neg") return Objective::kNegativeSampling;
  if (name == "hs") return Objective::kHierarchicalSoftmax;
  if (name == "softmax") return Objective::kFullSoftmax;
  throw ConfigError("unknown objective: " + name);
}

template <typename T>
EmbeddingModelT<T>::EmbeddingModelT(std::shared_ptr<const Vocabulary> vocab, std::int32_t dim,
                                    Objective objective, std::uint64_t seed)
    : vocab_(std::move(vocab)), dim_(dim), objective_(objective) {
  if (dim_ < 1) throw ConfigError("dim must be >= 1");
  if (!vocab_ || vocab_->empty()) throw ConfigError("model needs a non-empty vocabulary");
  const std::size_t w = vocab_->size();
  if (objective_ == Objective::kHierarchicalSoftmax && w < 2)
    throw ConfigError("hierarchical softmax needs a vocabulary of at least 2 words");

  const std::size_t output_rows =
      objective_ == Objective::kHierarchicalSoftmax ? w - 1 : w;
  input_.resize(w * static_cast<std::size_t>(dim_));
  output_.assign(output_rows * static_cast<std::size_t>(dim_), T(0));

  Rng rng(seed);
  const double scale = 1.0 / static_cast<double>(dim_);
  for (auto& v : input_) v = static_cast<T>((rng.uniform() - 0.5) * scale);
}

template <typename T>
EmbeddingModelT<T>::EmbeddingModelT(std::shared_ptr<const Vocabulary> vocab, std::int32_t dim,
                                    std::vector<T> input_vectors)
    : vocab_(std::move(vocab)), dim_(dim), input_(std::move(input_vectors)) {
  if (dim_ < 1) throw ConfigError("dim must be >= 1");
  if (!vocab_ || vocab_->empty()) throw ConfigError("model needs a non-empty vocabulary");
  if (input_.size() != vocab_->size() * static_cast<std::size_t>(dim_))
    throw ConfigError("input vector table does not match vocabulary size and dim");
}

template <typename T>
bool EmbeddingModelT<T>::all_finite() const {
  for (T v : input_)
    if (!std::isfinite(v)) return false;
  for (T v : output_)
    if (!std::isfinite(v)) return false;
  return true;
}

template class EmbeddingModelT<float>;
template class EmbeddingModelT<double>;

namespace {

static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);

void put_f32_le(float v, char* out) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
  std::memcpy(out, &bits, 4);
}

float get_f32_le(const char* in) {
  std::uint32_t bits;
  std::memcpy(&bits, in, 4);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

void append_float_text(std::string& line, float v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  line.push_back(' ');
  line.append(buf, p);
}

// Reads the "W D\n" header shared by both formats.
void parse_header(std::istream& in, const std::string& path, std::uint64_t& offset,
                  std::uint64_t& rows, std::uint64_t& dim) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header: " + path, 0);
  const char* first = line.data();
  const char* last = line.data() + line.size();
  auto [p1, ec1] = std::from_chars(first, last, rows);
  if (ec1 != std::errc() || p1 == last || *p1 != ' ')
    throw ParseError("malformed header: " + path, 0);
  auto [p2, ec2] = std::from_chars(p1 + 1, last, dim);
  if (ec2 != std::errc() || p2 != last || rows == 0 || dim == 0)
    throw ParseError("malformed header: " + path, 0);
  offset = line.size() + 1;
}

EmbeddingModel make_loaded_model(std::vector<std::string> words, std::vector<float> vectors,
                                 std::uint64_t dim, const std::string& path,
                                 std::uint64_t offset) {
  std::vector<std::int64_t> counts(words.size(), 1);
  std::shared_ptr<const Vocabulary> vocab;
  try {
    vocab = std::make_shared<Vocabulary>(
        Vocabulary::from_counts(std::move(words), std::move(counts), 1));
  } catch (const ConfigError& e) {
    throw ParseError(std::string(e.what()) + ": " + path, offset);
  }
  return EmbeddingModel(std::move(vocab), static_cast<std::int32_t>(dim), std::move(vectors));
}

}  // namespace

void save_vectors(const EmbeddingModel& model, const std::string& path, VectorFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open vectors file for writing: " + path, 0);

  const auto w = model.vocab_size();
  const auto d = static_cast<std::size_t>(model.dim());
  out << w << ' ' << model.dim() << '\n';

  if (format == VectorFormat::kBinary) {
    std::string row;
    for (std::size_t i = 0; i < w; ++i) {
      row.assign(model.vocab().word(static_cast<std::int32_t>(i)));
      row.push_back(' ');
      std::size_t base = row.size();
      row.resize(base + 4 * d);
      auto vec = model.input_row(static_cast<std::int32_t>(i));
      for (std::size_t j = 0; j < d; ++j) put_f32_le(vec[j], row.data() + base + 4 * j);
      row.push_back('\n');
      out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
  } else {
    std::string line;
    for (std::size_t i = 0; i < w; ++i) {
      line.assign(model.vocab().word(static_cast<std::int32_t>(i)));
      auto vec = model.input_row(static_cast<std::int32_t>(i));
      for (std::size_t j = 0; j < d; ++j) append_float_text(line, vec[j]);
      line.push_back('\n');
      out.write(line.data(), static_cast<std::streamsize>(line.size()));
    }
  }
  if (!out) throw IoError("vectors write failed: " + path, 0);
}

namespace {

EmbeddingModel load_vectors_binary(std::istream& in, const std::string& path) {
  std::uint64_t offset = 0, rows = 0, dim = 0;
  parse_header(in, path, offset, rows, dim);

  std::vector<std::string> words;
  words.reserve(rows);
  std::vector<float> vectors;
  vectors.reserve(rows * dim);
  std::vector<char> raw(4 * dim);
  std::string word;

  for (std::uint64_t r = 0; r < rows; ++r) {
    word.clear();
    int ch;
    while ((ch = in.get()) != ' ') {
      if (ch == std::istream::traits_type::eof())
        throw ParseError("truncated row " + std::to_string(r) + ": " + path,
                         offset + word.size());
      word.push_back(static_cast<char>(ch));
    }
    if (word.empty()) throw ParseError("empty word in row " + std::to_string(r) + ": " + path, offset);
    offset += word.size() + 1;

    if (!in.read(raw.data(), static_cast<std::streamsize>(raw.size())))
      throw ParseError("truncated row " + std::to_string(r) + ": " + path, offset);
    for (std::uint64_t j = 0; j < dim; ++j) {
      float v = get_f32_le(raw.data() + 4 * j);
      if (!std::isfinite(v))
        throw ParseError("non-finite value in row " + std::to_string(r) + ": " + path,
                         offset + 4 * j);
      vectors.push_back(v);
    }
    offset += 4 * dim;
    if (in.get() != '\n')
      throw ParseError("missing row terminator in row " + std::to_string(r) + ": " + path, offset);
    offset += 1;
    words.push_back(word);
  }
  if (in.peek() != std::istream::traits_type::eof())
    throw ParseError("trailing data after " + std::to_string(rows) + " rows: " + path, offset);
  return make_loaded_model(std::move(words), std::move(vectors), dim, path, offset);
}

EmbeddingModel load_vectors_text(std::istream& in, const std::string& path) {
  std::uint64_t offset = 0, rows = 0, dim = 0;
  parse_header(in, path, offset, rows, dim);

  std::vector<std::string> words;
  words.reserve(rows);
  std::vector<float> vectors;
  vectors.reserve(rows * dim);
  std::string line;

  for (std::uint64_t r = 0; r < rows; ++r) {
    if (!std::getline(in, line))
      throw ParseError("truncated file: expected " + std::to_string(rows) + " rows, found " +
                           std::to_string(r) + ": " + path,
                       offset);
    const char* cur = line.data();
    const char* last = line.data() + line.size();
    const char* space = cur;
    while (space != last && *space != ' ') ++space;
    if (space == cur || space == last)
      throw ParseError("malformed row " + std::to_string(r) + ": " + path, offset);
    words.emplace_back(cur, space);

    cur = space;
    for (std::uint64_t j = 0; j < dim; ++j) {
      if (cur == last || *cur != ' ')
        throw ParseError("row " + std::to_string(r) + " has fewer than " + std::to_string(dim) +
                             " values: " + path,
                         offset + static_cast<std::uint64_t>(cur - line.data()));
      ++cur;
      float v;
      auto [p, ec] = std::from_chars(cur, last, v);
      if (ec != std::errc())
        throw ParseError("bad value in row " + std::to_string(r) + ": " + path,
                         offset + static_cast<std::uint64_t>(cur - line.data()));
      if (!std::isfinite(v))
        throw ParseError("non-finite value in row " + std::to_string(r) + ": " + path,
                         offset + static_cast<std::uint64_t>(cur - line.data()));
      vectors.push_back(v);
      cur = p;
    }
    if (cur != last)
      throw ParseError("row " + std::to_string(r) + " has more than " + std::to_string(dim) +
                           " values: " + path,
                       offset + static_cast<std::uint64_t>(cur - line.data()));
    offset += line.size() + 1;
  }
  if (in.peek() != std::istream::traits_type::eof())
    throw ParseError("trailing data after " + std::to_string(rows) + " rows: " + path, offset);
  return make_loaded_model(std::move(words), std::move(vectors), dim, path, offset);
}

}  // namespace

EmbeddingModel load_vectors(const std::string& path, VectorFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open vectors file: " + path, 0);
  return format == VectorFormat::kBinary ? load_vectors_binary(in, path)
                                         : load_vectors_text(in, path);
}

namespace {

constexpr char kCheckpointMagic[8] = {'S', 'G', 'C', 'K', 'P', 'T', '0', '1'};
constexpr std::uint32_t kCheckpointVersion = 1;

template <typename T>
void put_le(std::ostream& out, T v) {
  static_assert(std::is_integral_v<T>);
  auto u = static_cast<std::make_unsigned_t<T>>(v);
  char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((u >> (8 * i)) & 0xff);
  out.write(buf, sizeof(T));
}

template <typename T>
T get_le(std::istream& in, const std::string& path, std::uint64_t& offset) {
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) throw ParseError("truncated checkpoint: " + path, offset);
  offset += sizeof(T);
  std::make_unsigned_t<T> u = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    u |= static_cast<std::make_unsigned_t<T>>(static_cast<unsigned char>(buf[i])) << (8 * i);
  return static_cast<T>(u);
}

void put_matrix(std::ostream& out, std::span<const float> data) {
  std::string buf(4 * data.size(), '\0');
  for (std::size_t i = 0; i < data.size(); ++i) put_f32_le(data[i], buf.data() + 4 * i);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void get_matrix(std::istream& in, const std::string& path, std::uint64_t& offset,
                std::span<float> data) {
  std::string buf(4 * data.size(), '\0');
  if (!in.read(buf.data(), static_cast<std::streamsize>(buf.size())))
    throw ParseError("truncated checkpoint: " + path, offset);
  offset += buf.size();
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = get_f32_le(buf.data() + 4 * i);
}

}  // namespace

void save_checkpoint(const EmbeddingModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open checkpoint for writing: " + path, 0);

  out.write(kCheckpointMagic, sizeof(kCheckpointMagic));
  put_le<std::uint32_t>(out, kCheckpointVersion);
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(model.objective()));
  put_le<std::int32_t>(out, model.dim());
  put_le<std::uint64_t>(out, model.vocab_size());
  put_le<std::uint64_t>(out, model.output_rows());
  put_le<std::int64_t>(out, model.vocab().min_count());

  for (std::size_t i = 0; i < model.vocab_size(); ++i) {
    const auto& w = model.vocab().word(static_cast<std::int32_t>(i));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(w.size()));
    out.write(w.data(), static_cast<std::streamsize>(w.size()));
    put_le<std::int64_t>(out, model.vocab().count(static_cast<std::int32_t>(i)));
  }
  put_matrix(out, model.input_data());
  put_matrix(out, model.output_data());
  if (!out) throw IoError("checkpoint write failed: " + path, 0);
}

EmbeddingModel load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + path, 0);
  std::uint64_t offset = 0;

  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kCheckpointMagic, 8) != 0)
    throw ParseError("bad checkpoint magic: " + path, 0);
  offset += 8;
  auto version = get_le<std::uint32_t>(in, path, offset);
  if (version != kCheckpointVersion)
    throw ParseError("unsupported checkpoint version " + std::to_string(version) + ": " + path,
                     offset);
  auto objective = static_cast<Objective>(get_le<std::uint8_t>(in, path, offset));
  auto dim = get_le<std::int32_t>(in, path, offset);
  auto w = get_le<std::uint64_t>(in, path, offset);
  auto output_rows = get_le<std::uint64_t>(in, path, offset);
  auto min_count = get_le<std::int64_t>(in, path, offset);

  std::vector<std::string> words(w);
  std::vector<std::int64_t> counts(w);
  for (std::uint64_t i = 0; i < w; ++i) {
    auto len = get_le<std::uint32_t>(in, path, offset);
    words[i].resize(len);
    if (!in.read(words[i].data(), len)) throw ParseError("truncated checkpoint: " + path, offset);
    offset += len;
    counts[i] = get_le<std::int64_t>(in, path, offset);
  }

  std::shared_ptr<const Vocabulary> vocab;
  try {
    vocab = std::make_shared<Vocabulary>(
        Vocabulary::from_counts(std::move(words), std::move(counts), min_count));
  } catch (const ConfigError& e) {
    throw ParseError(std::string(e.what()) + ": " + path, offset);
  }

  EmbeddingModel model(vocab, dim, objective, /*seed=*/0);
  if (model.output_rows() != output_rows)
    throw ParseError("checkpoint output table does not match objective: " + path, offset);
  get_matrix(in, path, offset, model.input_data());
  get_matrix(in, path, offset, model.output_data());
  if (!model.all_finite()) throw ParseError("non-finite value in checkpoint: " + path, offset);
  return model;
}

}  // namespace skipgram
