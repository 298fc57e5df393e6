#include "swseg/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace swseg::kernels {

namespace {

const Table* select() {
    const char* force = std::getenv("SWSEG_KERNELS");
    if (force != nullptr && std::strcmp(force, "scalar") == 0) return &scalar_table();
#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
    if (__builtin_cpu_supports("avx2")) {
        const Table* avx2 = avx2_table();
        if (avx2 != nullptr) return avx2;
    }
#endif
    return &scalar_table();
}

}  // namespace

const Table& active() {
    static const Table* chosen = select();
    return *chosen;
}

}  // namespace swseg::kernels
