#pragma once

#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace aap {

/// Dense column-major matrix; columns hold the outgoing rates of one
/// configuration, matching the transition-matrix convention.
template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(std::size_t(rows) * std::size_t(cols), fill) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative extent");
    }

    static Matrix identity(int n, const T& one, const T& zero = T()) {
        Matrix m(n, n, zero);
        for (int i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& at(int r, int c) { return data_[index_(r, c)]; }
    const T& at(int r, int c) const { return data_[index_(r, c)]; }

    /// Contiguous column span.
    T* col(int c) { return data_.data() + std::size_t(c) * std::size_t(rows_); }
    const T* col(int c) const { return data_.data() + std::size_t(c) * std::size_t(rows_); }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.check_same_shape_(b);
        Matrix out = a;
        for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = out.data_[i] + b.data_[i];
        return out;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.check_same_shape_(b);
        Matrix out = a;
        for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = out.data_[i] - b.data_[i];
        return out;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: product shape mismatch");
        Matrix out(a.rows_, b.cols_);
        for (int c = 0; c < b.cols_; ++c)
            for (int k = 0; k < a.cols_; ++k) {
                const T& bkc = b.at(k, c);
                for (int r = 0; r < a.rows_; ++r)
                    out.at(r, c) = out.at(r, c) + a.at(r, k) * bkc;
            }
        return out;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (int(v.size()) != cols_) throw std::invalid_argument("Matrix: vector length mismatch");
        std::vector<T> out(static_cast<std::size_t>(rows_), T{});
        for (int c = 0; c < cols_; ++c)
            for (int r = 0; r < rows_; ++r) out[std::size_t(r)] = out[std::size_t(r)] + at(r, c) * v[std::size_t(c)];
        return out;
    }

    Matrix transposed() const {
        Matrix out(cols_, rows_);
        for (int c = 0; c < cols_; ++c)
            for (int r = 0; r < rows_; ++r) out.at(c, r) = at(r, c);
        return out;
    }

    Matrix& scale(const T& s) {
        for (auto& v : data_) v = v * s;
        return *this;
    }

    bool is_zero(const T& zero = T()) const {
        for (const auto& v : data_)
            if (!(v == zero)) return false;
        return true;
    }

    bool is_lower_triangular(const T& zero = T()) const {
        for (int c = 0; c < cols_; ++c)
            for (int r = 0; r < c && r < rows_; ++r)
                if (!(at(r, c) == zero)) return false;
        return true;
    }

    bool is_upper_triangular(const T& zero = T()) const {
        for (int c = 0; c < cols_; ++c)
            for (int r = c + 1; r < rows_; ++r)
                if (!(at(r, c) == zero)) return false;
        return true;
    }

    std::vector<T> diagonal() const {
        std::vector<T> out;
        for (int i = 0; i < rows_ && i < cols_; ++i) out.push_back(at(i, i));
        return out;
    }

    template <class U, class Fn>
    Matrix<U> map(Fn&& fn) const {
        Matrix<U> out(rows_, cols_);
        for (int c = 0; c < cols_; ++c)
            for (int r = 0; r < rows_; ++r) out.at(r, c) = fn(at(r, c));
        return out;
    }

    /// "row,col,value" triplets in row-major order, canonical value strings.
    void write_csv(std::ostream& os, const std::function<std::string(const T&)>& render) const {
        os << "row,col,value\n";
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) os << r << "," << c << "," << render(at(r, c)) << "\n";
    }

  private:
    std::size_t index_(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("Matrix: index out of range");
        return std::size_t(c) * std::size_t(rows_) + std::size_t(r);
    }
    void check_same_shape_(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: shape mismatch");
    }

    int rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

}  // namespace aap
