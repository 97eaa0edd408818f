#include "sf/cipher.hpp"

#include <array>
#include <bit>

namespace sf {

namespace {

constexpr std::size_t kMaxHalf = kMaxBlockBytes;  // nibbles per half at 192 bits
constexpr std::size_t kMaxStages = 5;             // ceil(log2(kMaxHalf))

// Per-call view of the tables the round function needs. The S-box used at
// (stage, position) is sboxes[(position + stage) % count]; index tables hold
// the wrapped neighbour positions so the inner loops never divide.
struct RoundContext {
  std::size_t half = 0;
  std::size_t stages = 0;
  std::array<std::array<const Sbox*, kMaxHalf>, kMaxStages + 1> sbox{};
  std::array<std::uint8_t, kMaxHalf> next1{};
  std::array<std::uint8_t, kMaxHalf> next2{};
  std::array<std::array<std::uint8_t, kMaxHalf>, kMaxStages + 1> partner{};
  std::array<std::uint8_t, kMaxHalf> out_from{};
  std::array<std::uint8_t, kMaxHalf> xnor_mask{};  // 0xF on odd nibbles
};

RoundContext make_context(std::size_t half, std::span<const Sbox> sboxes) {
  if (sboxes.empty()) throw Error(ErrorCode::kInvalidConstants, "no S-boxes");
  RoundContext ctx;
  ctx.half = half;
  ctx.stages = half > 1 ? static_cast<std::size_t>(std::bit_width(half - 1)) : 0;
  for (std::size_t i = 0; i < half; ++i) {
    ctx.next1[i] = static_cast<std::uint8_t>((i + 1) % half);
    ctx.next2[i] = static_cast<std::uint8_t>((i + 2) % half);
    ctx.out_from[i] = static_cast<std::uint8_t>((i ^ 1U) < half ? (i ^ 1U) : i);
    ctx.xnor_mask[i] = (i & 1U) ? 0x0F : 0x00;
  }
  for (std::size_t stage = 0; stage <= ctx.stages; ++stage) {
    const std::size_t shift = stage == 0 ? 0 : std::size_t{1} << (stage - 1);
    for (std::size_t i = 0; i < half; ++i) {
      ctx.sbox[stage][i] = &sboxes[(i + stage) % sboxes.size()];
      ctx.partner[stage][i] = static_cast<std::uint8_t>((i + shift) % half);
    }
  }
  return ctx;
}

inline std::uint8_t rotl4(std::uint8_t v) {
  return static_cast<std::uint8_t>(((v << 1) | (v >> 3)) & 0x0F);
}

// F over one half of `half` nibbles. rk holds 2 * half nibbles: the first
// half keys the XOR/XNOR stage, the second half the OR stage.
// N is the half width in nibbles, fixed at compile time so the loops unroll.
template <std::size_t N>
void round_function(const std::uint8_t* x, const std::uint8_t* rk, const RoundContext& ctx,
                    std::uint8_t* out) {
  constexpr std::size_t n = N;
  constexpr std::size_t stages = N > 1 ? static_cast<std::size_t>(std::bit_width(N - 1)) : 0;
  std::array<std::uint8_t, N> y;
  std::array<std::uint8_t, N> buf_a;
  std::array<std::uint8_t, N> buf_b;

  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] ^ rk[i] ^ ctx.xnor_mask[i];
  std::uint8_t* s = buf_a.data();
  std::uint8_t* t = buf_b.data();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t z = y[i] ^ ((y[ctx.next1[i]] & y[ctx.next2[i]]) | rk[n + i]);
    s[i] = (*ctx.sbox[0][i])[z];
  }
  // Rotate-and-combine stages: after stage j every nibble depends on 2^j
  // neighbours, so ceil(log2(n)) stages reach the whole half.
  for (std::size_t stage = 1; stage <= stages; ++stage) {
    const auto& partner = ctx.partner[stage];
    const auto& boxes = ctx.sbox[stage];
    for (std::size_t i = 0; i < n; ++i) t[i] = (*boxes[i])[s[i] ^ rotl4(s[partner[i]])];
    std::swap(s, t);
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = s[ctx.out_from[i]];
}

// Five-round balanced Feistel on 2 * half nibbles in place. Halves swap after
// every round but the last; the even number of swaps leaves them in place.
// keys[r] is the round key used in round r, already reversed for decryption.
template <std::size_t N>
void feistel_n(std::uint8_t* state, const RoundContext& ctx,
               const std::array<const std::uint8_t*, kRounds>& keys) {
  std::uint8_t* left = state;
  std::uint8_t* right = state + N;
  std::array<std::uint8_t, N> f;
  for (std::size_t r = 0; r < kRounds; ++r) {
    round_function<N>(right, keys[r], ctx, f.data());
    for (std::size_t i = 0; i < N; ++i) left[i] ^= f[i];
    if (r + 1 != kRounds) std::swap(left, right);
  }
}

using FeistelFn = void (*)(std::uint8_t*, const RoundContext&,
                           const std::array<const std::uint8_t*, kRounds>&);

FeistelFn feistel_for(std::size_t half) {
  switch (half) {
    case 1: return &feistel_n<1>;
    case 8: return &feistel_n<8>;
    case 16: return &feistel_n<16>;
    case 24: return &feistel_n<24>;
    default: throw Error(ErrorCode::kInvalidArgument, "unsupported half width " + std::to_string(half));
  }
}

void feistel(std::uint8_t* state, const RoundContext& ctx,
             const std::array<const std::uint8_t*, kRounds>& keys) {
  feistel_for(ctx.half)(state, ctx, keys);
}

template <class KeyAt>
std::array<const std::uint8_t*, kRounds> round_order(KeyAt key_at, bool decrypt) {
  std::array<const std::uint8_t*, kRounds> keys{};
  for (std::size_t r = 0; r < kRounds; ++r) keys[r] = key_at(decrypt ? kRounds - 1 - r : r);
  return keys;
}

void unpack(std::span<const std::uint8_t> bytes, std::uint8_t* nibbles) {
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    nibbles[2 * i] = bytes[i] >> 4;
    nibbles[2 * i + 1] = bytes[i] & 0x0F;
  }
}

void pack(const std::uint8_t* nibbles, std::span<std::uint8_t> bytes) {
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = static_cast<std::uint8_t>((nibbles[2 * i] << 4) | nibbles[2 * i + 1]);
  }
}

void require_same(Variant a, Variant b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::kWidthMismatch,
                std::string(what) + ": " + std::to_string(block_bits(a)) + "-bit " +
                    std::string(variant_name(a)) + " vs " + std::to_string(block_bits(b)) +
                    "-bit " + std::string(variant_name(b)));
  }
}

void check_compatible(Variant data, const RoundKeySchedule& schedule,
                      const CipherConstants& constants) {
  require_same(data, schedule.variant(), "block and schedule");
  require_same(data, constants.variant, "block and constants");
  if (schedule.constant_version() != constants.version) {
    throw Error(ErrorCode::kVersionMismatch, "schedule derived under '" +
                                                 schedule.constant_version() +
                                                 "' but constants are '" + constants.version + "'");
  }
}

void run_blocks(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                const RoundKeySchedule& schedule, const CipherConstants& constants,
                bool decrypt) {
  const Variant v = schedule.variant();
  check_compatible(v, schedule, constants);
  const std::size_t bb = block_bytes(v);
  if (in.size() != out.size()) {
    throw Error(ErrorCode::kWidthMismatch, "input and output buffers differ in length");
  }
  if (in.size() % bb != 0) {
    throw Error(ErrorCode::kWidthMismatch, "buffer of " + std::to_string(in.size()) +
                                               " bytes is not a multiple of the " +
                                               std::to_string(bb) + "-byte block");
  }
  const RoundContext ctx = make_context(bb, constants.sboxes);
  const auto keys = round_order([&](std::size_t r) { return schedule.nibbles(r).data(); }, decrypt);
  const FeistelFn rounds = feistel_for(bb);
  std::array<std::uint8_t, 2 * kMaxBlockBytes> state{};
  for (std::size_t off = 0; off < in.size(); off += bb) {
    unpack(in.subspan(off, bb), state.data());
    rounds(state.data(), ctx, keys);
    pack(state.data(), out.subspan(off, bb));
  }
}

Block run_block(const Block& in, const RoundKeySchedule& schedule,
                const CipherConstants& constants, bool decrypt) {
  check_compatible(in.variant(), schedule, constants);
  Block out(in.variant());
  run_blocks(in.bytes(), out.bytes(), schedule, constants, decrypt);
  return out;
}

// Key-expansion register helpers; bit 0 is the MSB of nibble 0.
using Nibbles = std::array<std::uint8_t, 2 * kMaxBlockBytes>;
using Bits = std::array<std::uint8_t, 8 * kMaxBlockBytes>;

Bits to_bits(const Nibbles& n, std::size_t width) {
  Bits b{};
  for (std::size_t i = 0; i < width; ++i) b[i] = (n[i / 4] >> (3 - i % 4)) & 1U;
  return b;
}

Nibbles from_bits(const Bits& b, std::size_t width) {
  Nibbles n{};
  for (std::size_t i = 0; i < width; ++i) {
    n[i / 4] = static_cast<std::uint8_t>(n[i / 4] | (b[i] << (3 - i % 4)));
  }
  return n;
}

std::uint8_t fm_apply(const BitMatrix4& fm, std::uint8_t nibble) {
  std::uint8_t out = 0;
  for (std::size_t row = 0; row < 4; ++row) {
    std::uint8_t bit = 0;
    for (std::size_t col = 0; col < 4; ++col) bit ^= fm[row][col] & ((nibble >> (3 - col)) & 1U);
    out = static_cast<std::uint8_t>((out << 1) | bit);
  }
  return out;
}

}  // namespace

RoundKeySchedule::RoundKeySchedule(std::string constant_version, std::vector<Block> round_keys)
    : constant_version_(std::move(constant_version)), round_keys_(std::move(round_keys)) {
  if (round_keys_.size() != kRounds) {
    throw Error(ErrorCode::kInvalidArgument, "a schedule holds exactly " +
                                                 std::to_string(kRounds) + " round keys, got " +
                                                 std::to_string(round_keys_.size()));
  }
  const Variant v = round_keys_.front().variant();
  const std::size_t per_key = 2 * block_bytes(v);
  nibbles_.resize(kRounds * per_key);
  for (std::size_t r = 0; r < kRounds; ++r) {
    require_same(v, round_keys_[r].variant(), "round keys");
    unpack(round_keys_[r].bytes(), nibbles_.data() + r * per_key);
  }
}

std::span<const std::uint8_t> RoundKeySchedule::nibbles(std::size_t round) const {
  const std::size_t per_key = 2 * block_bytes(variant());
  return std::span<const std::uint8_t>(nibbles_).subspan(round * per_key, per_key);
}

RoundKeySchedule derive_round_keys(const CipherKey& key, const CipherConstants& constants) {
  require_same(key.variant(), constants.variant, "key and constants");
  if (const auto report = validate_constants(constants); !report.ok()) {
    throw Error(ErrorCode::kInvalidConstants, report.violations.front());
  }
  const std::size_t width = key.bits();
  const std::size_t digits = width / 4;
  const std::size_t half = digits / 2;

  Nibbles reg{};
  unpack(key.bytes(), reg.data());

  std::vector<Block> round_keys;
  round_keys.reserve(kRounds);
  for (std::size_t stage = 0; stage < kRounds; ++stage) {
    for (std::size_t i = 0; i < half; ++i) {
      const std::uint8_t hi = reg[i] ^ reg[half + i];
      const std::uint8_t lo = static_cast<std::uint8_t>(~(reg[half + i] ^ hi) & 0x0F);
      reg[i] = hi;
      reg[half + i] = lo;
    }

    const Bits bits = to_bits(reg, width);
    Bits rotated{};
    const std::size_t amount = constants.ls_amounts[stage];
    for (std::size_t i = 0; i < width; ++i) rotated[i] = bits[(i + amount) % width];
    reg = from_bits(rotated, width);

    for (std::size_t i = 0; i < digits; ++i) reg[i] = fm_apply(constants.fm, reg[i]);

    const Bits before_p = to_bits(reg, width);
    Bits permuted{};
    for (std::size_t i = 0; i < width; ++i) permuted[i] = before_p[constants.p_table[i]];
    reg = from_bits(permuted, width);

    Nibbles transposed{};
    for (std::size_t i = 0; i < digits; ++i) transposed[i] = reg[constants.t_table[i]];
    reg = transposed;

    Block rk(key.variant());
    pack(reg.data(), rk.bytes());
    round_keys.push_back(rk);
  }
  return RoundKeySchedule(constants.version, std::move(round_keys));
}

Block encrypt_block(const Block& plaintext, const RoundKeySchedule& schedule,
                    const CipherConstants& constants) {
  return run_block(plaintext, schedule, constants, false);
}

Block decrypt_block(const Block& ciphertext, const RoundKeySchedule& schedule,
                    const CipherConstants& constants) {
  return run_block(ciphertext, schedule, constants, true);
}

void encrypt_blocks(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                    const RoundKeySchedule& schedule, const CipherConstants& constants) {
  run_blocks(in, out, schedule, constants, false);
}

void decrypt_blocks(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                    const RoundKeySchedule& schedule, const CipherConstants& constants) {
  run_blocks(in, out, schedule, constants, true);
}

namespace toy {

namespace {

std::uint8_t run(std::uint8_t block, std::span<const std::uint8_t, kRounds> round_keys,
                 std::span<const Sbox> sboxes, bool decrypt) {
  const RoundContext ctx = make_context(1, sboxes);
  std::array<std::array<std::uint8_t, 2>, kRounds> keys{};
  for (std::size_t r = 0; r < kRounds; ++r) {
    keys[r] = {static_cast<std::uint8_t>(round_keys[r] >> 4),
               static_cast<std::uint8_t>(round_keys[r] & 0x0F)};
  }
  std::array<std::uint8_t, 2> state = {static_cast<std::uint8_t>(block >> 4),
                                       static_cast<std::uint8_t>(block & 0x0F)};
  feistel(state.data(), ctx, round_order([&](std::size_t r) { return keys[r].data(); }, decrypt));
  return static_cast<std::uint8_t>((state[0] << 4) | state[1]);
}

}  // namespace

std::uint8_t encrypt(std::uint8_t plaintext, std::span<const std::uint8_t, kRounds> round_keys,
                     std::span<const Sbox> sboxes) {
  return run(plaintext, round_keys, sboxes, false);
}

std::uint8_t decrypt(std::uint8_t ciphertext, std::span<const std::uint8_t, kRounds> round_keys,
                     std::span<const Sbox> sboxes) {
  return run(ciphertext, round_keys, sboxes, true);
}

}  // namespace toy

}  // namespace sf
