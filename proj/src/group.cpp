#include "knot/group.hpp"

#include <fstream>
#include <sstream>

#include "knot/errors.hpp"

namespace knot {

namespace {

// Primes below 10^4 for the deterministic trial-division stage.
const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<std::uint32_t> out;
    std::vector<bool> composite(10000, false);
    for (std::uint32_t i = 2; i < 10000; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint32_t j = i * i; j < 10000; j += i) {
        composite[j] = true;
      }
    }
    return out;
  }();
  return primes;
}

// 0 = composite, 1 = prime, -1 = undecided (no factor below 10^4).
int trial_division(const Bigint& n) {
  for (const std::uint32_t prime : small_primes()) {
    if (n == prime) return 1;
    if (mpz_divisible_ui_p(n.get_mpz_t(), prime)) return 0;
  }
  // No factor below 10^4, so anything under 10^8 is prime.
  if (n < 100000000) return 1;
  return -1;
}

bool miller_rabin(const Bigint& n, int rounds) {
  // n odd, n > 3 here. Write n-1 = d * 2^s.
  Bigint n_minus_1 = n - 1;
  Bigint d = n_minus_1;
  unsigned long s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }

  // Bases come from a generator seeded from n itself, so a given candidate
  // always sees the same bases and validation is reproducible.
  gmp_randclass bases(gmp_randinit_mt);
  Bigint seed = (n ^ (n >> 17)) + 0x9E3779B9;
  bases.seed(seed);

  for (int round = 0; round < rounds; ++round) {
    Bigint a = bases.get_z_range(n - 3) + 2;  // [2, n-2]
    Bigint x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) continue;
    bool witness = true;
    for (unsigned long i = 1; i < s; ++i) {
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
      if (x == n_minus_1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

constexpr int kMillerRabinRounds = 40;

bool is_probable_prime_rounds(const Bigint& n, int rounds) {
  if (n < 2) return false;
  switch (trial_division(n)) {
    case 0: return false;
    case 1: return true;
    default: break;
  }
  return miller_rabin(n, rounds);
}

std::string trim(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  std::size_t end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

std::vector<Bigint> parse_dec_list(const std::string& text) {
  std::vector<Bigint> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    out.push_back(from_dec(trim(item)));
  }
  if (out.empty()) {
    throw Error(Errc::param, "empty integer list");
  }
  return out;
}

}  // namespace

Bigint mod_exp(const Bigint& base, const Bigint& exponent,
               const GroupParams& params, ExpCounter* counter) {
  if (base <= 0 || base >= params.p) {
    throw Error(Errc::param, "base outside [1, p-1]");
  }
  if (exponent < 0) {
    throw Error(Errc::param, "negative exponent");
  }
  Bigint reduced = exponent % (params.p - 1);
  Bigint result;
  mpz_powm(result.get_mpz_t(), base.get_mpz_t(), reduced.get_mpz_t(),
           params.p.get_mpz_t());
  if (counter != nullptr) {
    ++counter->accounted;
  }
  return result;
}

Bigint mod_inv(const Bigint& a, const GroupParams& params) {
  if (a <= 0 || a >= params.p) {
    throw Error(Errc::param, "no inverse: element outside [1, p-1]");
  }
  Bigint result;
  if (mpz_invert(result.get_mpz_t(), a.get_mpz_t(), params.p.get_mpz_t()) == 0) {
    throw Error(Errc::param, "element not invertible");
  }
  return result;
}

bool is_probable_prime(const Bigint& n) {
  return is_probable_prime_rounds(n, kMillerRabinRounds);
}

Bigint find_generator(const Bigint& p, const Bigint& q) {
  GroupParams scratch{p, q, 2};
  for (Bigint g = 2; g <= p - 2; ++g) {
    if (mod_exp(g, 2, scratch) == 1) continue;
    if (mod_exp(g, q, scratch) == 1) continue;
    return g;
  }
  throw Error(Errc::param, "no generator found; modulus is not a safe prime");
}

GroupParams generate_safe_prime(unsigned bits, RandomSource& rng) {
  if (bits < kMinModulusBits || bits > kMaxModulusBits) {
    throw Error(Errc::param, "modulus size must be in [5, 4096] bits");
  }
  // q gets bits-1 significant bits so p = 2q+1 lands on exactly `bits`.
  Bigint lo = Bigint(1) << (bits - 2);
  Bigint hi = (Bigint(1) << (bits - 1)) - 1;
  while (true) {
    Bigint q = rng.uniform(lo, hi);
    mpz_setbit(q.get_mpz_t(), 0);
    Bigint p = 2 * q + 1;
    // One-round screen first; the 40-round confirmation is the expensive part.
    if (!is_probable_prime_rounds(q, 1)) continue;
    if (!is_probable_prime_rounds(p, 1)) continue;
    if (!is_probable_prime(q) || !is_probable_prime(p)) continue;
    return GroupParams{p, q, find_generator(p, q)};
  }
}

bool validate_params(const GroupParams& candidate) {
  const Bigint& p = candidate.p;
  const Bigint& q = candidate.q;
  const Bigint& g = candidate.g;
  if (p < kMinModulus) return false;
  if (p != 2 * q + 1) return false;
  if (g < 2 || g > p - 2) return false;
  if (!is_probable_prime(p) || !is_probable_prime(q)) return false;
  GroupParams scratch{p, q, g};
  if (mod_exp(g, 2, scratch) == 1) return false;
  if (mod_exp(g, q, scratch) == 1) return false;
  return true;
}

ParamsFile parse_params(const std::string& text) {
  std::optional<Bigint> p, q, g;
  std::optional<std::vector<Bigint>> xs;
  std::stringstream stream(text);
  std::string raw;
  while (std::getline(stream, raw)) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::param, "malformed parameter line: " + line);
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "p") {
      p = from_dec(value);
    } else if (key == "q") {
      q = from_dec(value);
    } else if (key == "g") {
      g = from_dec(value);
    } else if (key == "xs") {
      xs = parse_dec_list(value);
    } else {
      throw Error(Errc::param, "unknown parameter key: " + key);
    }
  }
  if (!p || !q || !g) {
    throw Error(Errc::param, "parameter file must define p, q and g");
  }
  return ParamsFile{GroupParams{*p, *q, *g}, std::move(xs)};
}

std::string render_params(const GroupParams& group,
                          const std::vector<Bigint>* xs) {
  std::string out;
  out += "p=" + to_dec(group.p) + "\n";
  out += "q=" + to_dec(group.q) + "\n";
  out += "g=" + to_dec(group.g) + "\n";
  if (xs != nullptr && !xs->empty()) {
    out += "xs=";
    for (std::size_t i = 0; i < xs->size(); ++i) {
      if (i > 0) out += ",";
      out += to_dec((*xs)[i]);
    }
    out += "\n";
  }
  return out;
}

ParamsFile read_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::io, "cannot open parameter file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_params(buffer.str());
}

void write_params_file(const std::string& path, const GroupParams& group,
                       const std::vector<Bigint>* xs) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw Error(Errc::io, "cannot write parameter file: " + path);
  }
  out << render_params(group, xs);
  if (!out.flush()) {
    throw Error(Errc::io, "write failed: " + path);
  }
}

}  // namespace knot
