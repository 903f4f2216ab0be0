#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <new>
#include <utility>

namespace hermsim {

using cplx = std::complex<double>;

/// Storage representation of a hermitian operator.
enum class Format : std::uint8_t { dense = 0, packed = 1, tiled = 2 };

inline const char* format_name(Format f) {
    switch (f) {
        case Format::dense: return "dense";
        case Format::packed: return "packed";
        case Format::tiled: return "tiled";
    }
    return "?";
}

/// Contiguous heap array with 64-byte-aligned base address.
///
/// All matrix payloads live in one of these; the alignment is a storage
/// invariant of the tiled format and harmless for the other two.
template <typename T>
class AlignedArray {
  public:
    static constexpr std::size_t alignment = 64;

    AlignedArray() = default;

    explicit AlignedArray(std::size_t count) : size_(count) {
        if (count > 0) {
            ptr_ = static_cast<T*>(::operator new(count * sizeof(T), std::align_val_t{alignment}));
            std::memset(static_cast<void*>(ptr_), 0, count * sizeof(T));
        }
    }

    AlignedArray(const AlignedArray& other) : AlignedArray(other.size_) {
        if (size_ > 0)
            std::memcpy(static_cast<void*>(ptr_), other.ptr_, size_ * sizeof(T));
    }

    AlignedArray(AlignedArray&& other) noexcept : ptr_(other.ptr_), size_(other.size_) {
        other.ptr_ = nullptr;
        other.size_ = 0;
    }

    AlignedArray& operator=(AlignedArray other) noexcept {
        swap(other);
        return *this;
    }

    ~AlignedArray() {
        if (ptr_)
            ::operator delete(ptr_, std::align_val_t{alignment});
    }

    void swap(AlignedArray& other) noexcept {
        std::swap(ptr_, other.ptr_);
        std::swap(size_, other.size_);
    }

    T* data() { return ptr_; }
    const T* data() const { return ptr_; }
    std::size_t size() const { return size_; }
    T& operator[](std::size_t i) { return ptr_[i]; }
    const T& operator[](std::size_t i) const { return ptr_[i]; }
    T* begin() { return ptr_; }
    T* end() { return ptr_ + size_; }
    const T* begin() const { return ptr_; }
    const T* end() const { return ptr_ + size_; }

  private:
    T* ptr_ = nullptr;
    std::size_t size_ = 0;
};

} // namespace hermsim
