#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "snapcap/rng.hpp"
#include "snapcap/tensor.hpp"

namespace snapcap::nn {

/// Trainable tensor with its gradient accumulator.
struct Param {
    std::string name;
    Tensor value;
    Tensor grad;

    Param() = default;
    Param(std::string n, std::vector<int64_t> shape)
        : name(std::move(n)), value(shape), grad(std::move(shape)) {}
};

using ParamRefs = std::vector<Param*>;

// elementwise helpers (deterministic, parallel over outputs)
void add_scaled(Tensor& dst, const Tensor& src, double s);
double dot4(const double* a, const double* b, int64_t n);

/// 2D convolution over [N,Cin,H,W] -> [N,Cout,Ho,Wo]. Layers own their
/// activation caches; forward must precede the matching backward and a new
/// forward invalidates the previous cache (training is single-writer).
class Conv2D {
public:
    Conv2D(std::string name, int64_t cin, int64_t cout, int64_t k, int64_t stride,
           int64_t pad);
    void init(Rng& rng, double scale = 0.0); // default He initialization
    void forward(const Tensor& in, Tensor& out);
    /// Accumulates weight/bias grads; writes input grad when din != nullptr.
    void backward(const Tensor& dout, Tensor* din);
    void params(ParamRefs& out);

    Param w, b;

private:
    int64_t cin_, cout_, k_, stride_, pad_;
    Tensor in_;
};

enum class Act { relu, tanh, sigmoid, gelu };

class Activation {
public:
    explicit Activation(Act kind) : kind_(kind) {}
    void forward(const Tensor& in, Tensor& out);
    void backward(const Tensor& dout, Tensor& din) const;

private:
    Act kind_;
    Tensor in_;
};

/// y = x + conv2(relu(conv1(x))), 3x3 convs, channel-preserving.
class ResBlock {
public:
    ResBlock(std::string name, int64_t ch);
    void init(Rng& rng);
    void forward(const Tensor& x, Tensor& y);
    void backward(const Tensor& dy, Tensor& dx);
    void params(ParamRefs& out);

private:
    Conv2D c1_, c2_;
    Activation act_{Act::relu};
    Tensor a1_, a1r_, a2_, da1r_, da1_;
};

/// Nearest-neighbour 2x upsampling.
class Upsample2x {
public:
    void forward(const Tensor& in, Tensor& out);
    void backward(const Tensor& dout, Tensor& din) const;

private:
    std::vector<int64_t> in_shape_;
};

/// Rows [R,In] -> [R,Out]; out = in W^T + b.
class Linear {
public:
    Linear(std::string name, int64_t in, int64_t out);
    void init(Rng& rng, double std = 0.02);
    void forward(const Tensor& in, Tensor& out);
    void backward(const Tensor& dout, Tensor* din);
    void params(ParamRefs& out);

    Param w, b;

private:
    int64_t in_dim_, out_dim_;
    Tensor in_;
};

/// Row-wise layer norm over the last dimension.
class LayerNorm {
public:
    LayerNorm(std::string name, int64_t dim, double eps = 1e-5);
    void forward(const Tensor& in, Tensor& out);
    void backward(const Tensor& dout, Tensor& din);
    void params(ParamRefs& out);

    Param gamma, beta;

private:
    int64_t dim_;
    double eps_;
    Tensor xhat_, rstd_;
};

/// Multi-head self-attention over [N,S,E]; optionally causal.
class SelfAttention {
public:
    SelfAttention(std::string name, int64_t dim, int64_t heads, bool causal);
    void init(Rng& rng);
    void forward(const Tensor& in, Tensor& out);
    void backward(const Tensor& dout, Tensor& din);
    void params(ParamRefs& out);

private:
    int64_t dim_, heads_, hd_;
    bool causal_;
    Linear qkv_, proj_;
    Tensor qkv_out_, att_, ctx_, datt_, dqkv_, dctx_;
};

/// Pre-norm transformer block: x + att(ln1(x)), then x + mlp(ln2(x)).
class TransformerBlock {
public:
    TransformerBlock(std::string name, int64_t dim, int64_t heads, int64_t mlp_ratio,
                     bool causal);
    void init(Rng& rng);
    void forward(const Tensor& in, Tensor& out);
    void backward(const Tensor& dout, Tensor& din);
    void params(ParamRefs& out);

private:
    LayerNorm ln1_, ln2_;
    SelfAttention att_;
    Linear fc1_, fc2_;
    Activation gelu_{Act::gelu};
    Tensor n1_, a_, x1_, n2_, h1_, h1g_, h2_;
    Tensor dn1_, da_, dn2_, dh1_, dh1g_, dx1_;
};

/// Learned token-embedding table.
class Embedding {
public:
    Embedding(std::string name, int64_t vocab, int64_t dim);
    void init(Rng& rng, double std = 0.02);
    void forward(const std::vector<int>& ids, Tensor& out); // [L,dim]
    void backward(const Tensor& dout);
    void params(ParamRefs& out);

    Param table;

private:
    int64_t dim_;
    std::vector<int> ids_;
};

// parameter utilities
int64_t param_count(const ParamRefs& ps);
void zero_grads(const ParamRefs& ps);

} // namespace snapcap::nn
