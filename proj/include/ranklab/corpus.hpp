#pragma once
// Reproducible instance corpora: a diagonal ladder with known ranks over
// small prime fields, seeded random small-field forms, and integer forms
// including ones with a planted prime coefficient that collapses at exactly
// one reduction. Generation is a pure function of (profile, seed); the
// manifest lists every instance with its construction parameters.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "ranklab/common.hpp"
#include "ranklab/generators.hpp"
#include "ranklab/serialize.hpp"

namespace ranklab {

enum class CorpusProfile { kDiagonalLadder, kRandomSmallField, kIntegerDescent };

inline CorpusProfile corpus_profile_from_string(const std::string& s) {
  if (s == "diagonal-ladder") return CorpusProfile::kDiagonalLadder;
  if (s == "random-smallfield") return CorpusProfile::kRandomSmallField;
  if (s == "integer-descent") return CorpusProfile::kIntegerDescent;
  throw std::invalid_argument("unknown corpus profile: " + s);
}

inline const char* corpus_profile_str(CorpusProfile p) {
  switch (p) {
    case CorpusProfile::kDiagonalLadder:
      return "diagonal-ladder";
    case CorpusProfile::kRandomSmallField:
      return "random-smallfield";
    case CorpusProfile::kIntegerDescent:
      return "integer-descent";
  }
  throw std::logic_error("unknown corpus profile");
}

struct CorpusInstance {
  std::string id;
  Json form;  // serialized form object
  Json meta;  // manifest row
};

inline std::vector<CorpusInstance> corpus_instances(CorpusProfile profile,
                                                    std::uint64_t seed,
                                                    const Caps& caps = Caps{}) {
  std::vector<CorpusInstance> out;
  const auto push = [&out](std::string id, Json form, Json meta) {
    meta["id"] = id;
    meta["file"] = id + ".json";
    out.push_back(CorpusInstance{std::move(id), std::move(form), std::move(meta)});
  };

  switch (profile) {
    case CorpusProfile::kDiagonalLadder: {
      for (const std::int64_t q : {2, 3, 5}) {
        const auto f = FiniteField::prime(q);
        for (int d = 2; d <= 3; ++d) {
          for (int r = 1; r <= 3; ++r) {
            const auto p = diagonal_form(f, r, d);
            Json meta;
            meta["ring"] = ring_to_json(f);
            meta["d"] = d;
            meta["dims"] = p.dims();
            meta["known_prk"] = r;
            push("diag_r" + std::to_string(r) + "_d" + std::to_string(d) + "_p" +
                     std::to_string(q),
                 form_to_json(p), std::move(meta));
          }
        }
      }
      break;
    }
    case CorpusProfile::kRandomSmallField: {
      Rng rng(seed);
      const std::int64_t qs[] = {2, 3, 5};
      for (int i = 0; i < 300; ++i) {
        const auto f = FiniteField::prime(qs[i % 3]);
        const int d = 2 + static_cast<int>(uniform_below(rng, 2));
        std::vector<int> dims(static_cast<std::size_t>(d));
        for (auto& v : dims) v = 1 + static_cast<int>(uniform_below(rng, 3));
        const auto p = random_form(f, dims, rng);
        Json meta;
        meta["ring"] = ring_to_json(f);
        meta["d"] = d;
        meta["dims"] = dims;
        char buf[16];
        std::snprintf(buf, sizeof buf, "rsf_%03d", i);
        push(buf, form_to_json(p), std::move(meta));
      }
      break;
    }
    case CorpusProfile::kIntegerDescent: {
      IntegerRing z;
      for (int d = 2; d <= 3; ++d) {
        for (int r = 1; r <= 3; ++r) {
          const auto p = diagonal_form(z, r, d);
          Json meta;
          meta["ring"] = ring_to_json(z);
          meta["d"] = d;
          meta["dims"] = p.dims();
          meta["known_prk"] = r;
          push("diag_int_r" + std::to_string(r) + "_d" + std::to_string(d),
               form_to_json(p), std::move(meta));
        }
      }
      for (const std::int64_t planted : {5, 7, 11, 13}) {
        // Two diagonal terms, the second scaled by the planted prime: its
        // reduction drops exactly one term at exactly one prime.
        MultilinearForm<IntegerRing> p(z, {2, 2, 2});
        p.set_entry({0, 0, 0}, Int(1));
        p.set_entry({1, 1, 1}, Int(planted));
        Json meta;
        meta["ring"] = ring_to_json(z);
        meta["d"] = 3;
        meta["dims"] = p.dims();
        meta["known_prk"] = 2;
        meta["planted_prime"] = planted;
        push("planted_p" + std::to_string(planted), form_to_json(p), std::move(meta));
      }
      break;
    }
  }
  (void)caps;
  return out;
}

// Writes one file per instance plus manifest.json; returns the manifest.
inline Json corpus_generate(const std::string& dir, CorpusProfile profile,
                            std::uint64_t seed, const Caps& caps = Caps{}) {
  std::filesystem::create_directories(dir);
  const auto instances = corpus_instances(profile, seed, caps);
  Json manifest;
  manifest["profile"] = corpus_profile_str(profile);
  manifest["seed"] = seed;
  manifest["version"] = kVersion;
  Json rows = Json::array();
  for (const auto& inst : instances) {
    save_json((std::filesystem::path(dir) / (inst.id + ".json")).string(), inst.form);
    rows.push_back(inst.meta);
  }
  manifest["instances"] = std::move(rows);
  save_json((std::filesystem::path(dir) / "manifest.json").string(), manifest);
  return manifest;
}

}  // namespace ranklab
