#include "snapcap/tensor_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace snapcap {

namespace {

constexpr char kTensorMagic[8] = {'S', 'N', 'A', 'P', 'T', 'N', 'S', 'R'};
constexpr char kArchiveMagic[8] = {'S', 'N', 'A', 'P', 'A', 'R', 'C', 'H'};

void put_u32(std::vector<unsigned char>& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_u64(std::vector<unsigned char>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

uint32_t get_u32(const unsigned char* p) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(p[i]) << (8 * i);
    return v;
}

uint64_t get_u64(const unsigned char* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(p[i]) << (8 * i);
    return v;
}

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

} // namespace

std::vector<unsigned char> tensor_to_bytes(const Tensor& t, uint32_t dt) {
    std::vector<unsigned char> out;
    out.insert(out.end(), kTensorMagic, kTensorMagic + 8);
    put_u32(out, dt);
    put_u32(out, static_cast<uint32_t>(t.rank()));
    for (int i = 0; i < t.rank(); ++i) put_u64(out, static_cast<uint64_t>(t.dim(i)));
    const int64_t n = t.numel();
    if (dt == dtype::f64) {
        static_assert(sizeof(double) == 8);
        const auto* raw = reinterpret_cast<const unsigned char*>(t.data());
        out.insert(out.end(), raw, raw + size_t(n) * 8);
    } else if (dt == dtype::f32) {
        for (int64_t i = 0; i < n; ++i) {
            float f = static_cast<float>(t[i]);
            unsigned char b[4];
            std::memcpy(b, &f, 4);
            out.insert(out.end(), b, b + 4);
        }
    } else if (dt == dtype::i64) {
        for (int64_t i = 0; i < n; ++i) {
            put_u64(out, static_cast<uint64_t>(static_cast<int64_t>(t[i])));
        }
    } else {
        fail("tensor write: unknown dtype code " + std::to_string(dt));
    }
    return out;
}

Tensor tensor_from_bytes(const unsigned char* buf, size_t len, size_t* consumed) {
    if (len < 16) fail("tensor read: truncated header");
    if (std::memcmp(buf, kTensorMagic, 8) != 0) fail("tensor read: bad magic");
    const uint32_t dt = get_u32(buf + 8);
    const uint32_t rank = get_u32(buf + 12);
    if (rank > 8) fail("tensor read: implausible rank");
    size_t off = 16;
    if (len < off + size_t(rank) * 8) fail("tensor read: truncated dims");
    std::vector<int64_t> shape(rank);
    int64_t n = 1;
    for (uint32_t i = 0; i < rank; ++i) {
        shape[i] = static_cast<int64_t>(get_u64(buf + off));
        n *= shape[i];
        off += 8;
    }
    Tensor t(shape);
    const size_t elem = (dt == dtype::f32) ? 4 : 8;
    if (len < off + size_t(n) * elem) fail("tensor read: truncated data");
    if (dt == dtype::f64) {
        std::memcpy(t.data(), buf + off, size_t(n) * 8);
    } else if (dt == dtype::f32) {
        for (int64_t i = 0; i < n; ++i) {
            float f;
            std::memcpy(&f, buf + off + size_t(i) * 4, 4);
            t[i] = double(f);
        }
    } else if (dt == dtype::i64) {
        for (int64_t i = 0; i < n; ++i) {
            t[i] = double(static_cast<int64_t>(get_u64(buf + off + size_t(i) * 8)));
        }
    } else {
        fail("tensor read: unknown dtype code " + std::to_string(dt));
    }
    off += size_t(n) * elem;
    if (consumed) *consumed = off;
    return t;
}

void write_tensor(const std::string& path, const Tensor& t, uint32_t dt) {
    auto bytes = tensor_to_bytes(t, dt);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) fail("short write: " + path);
}

namespace {
std::vector<unsigned char> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) fail("cannot open for reading: " + path);
    const auto size = in.tellg();
    in.seekg(0);
    std::vector<unsigned char> buf(static_cast<size_t>(size));
    in.read(reinterpret_cast<char*>(buf.data()), size);
    if (!in) fail("short read: " + path);
    return buf;
}
} // namespace

Tensor read_tensor(const std::string& path) {
    auto buf = slurp(path);
    return tensor_from_bytes(buf.data(), buf.size());
}

void write_archive(const std::string& path, const std::vector<NamedTensor>& entries) {
    std::vector<unsigned char> out;
    out.insert(out.end(), kArchiveMagic, kArchiveMagic + 8);
    put_u32(out, static_cast<uint32_t>(entries.size()));
    for (const auto& e : entries) {
        put_u32(out, static_cast<uint32_t>(e.name.size()));
        out.insert(out.end(), e.name.begin(), e.name.end());
        auto blob = tensor_to_bytes(e.value, dtype::f64);
        out.insert(out.end(), blob.begin(), blob.end());
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) fail("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(out.data()),
            static_cast<std::streamsize>(out.size()));
    if (!f) fail("short write: " + path);
}

std::vector<NamedTensor> read_archive(const std::string& path) {
    auto buf = slurp(path);
    if (buf.size() < 12 || std::memcmp(buf.data(), kArchiveMagic, 8) != 0) {
        fail("archive read: bad magic in " + path);
    }
    const uint32_t count = get_u32(buf.data() + 8);
    size_t off = 12;
    std::vector<NamedTensor> entries;
    entries.reserve(count);
    for (uint32_t i = 0; i < count; ++i) {
        if (buf.size() < off + 4) fail("archive read: truncated record");
        const uint32_t name_len = get_u32(buf.data() + off);
        off += 4;
        if (buf.size() < off + name_len) fail("archive read: truncated name");
        std::string name(reinterpret_cast<const char*>(buf.data() + off), name_len);
        off += name_len;
        size_t used = 0;
        Tensor t = tensor_from_bytes(buf.data() + off, buf.size() - off, &used);
        off += used;
        entries.push_back({std::move(name), std::move(t)});
    }
    return entries;
}

} // namespace snapcap
