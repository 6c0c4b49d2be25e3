#include "symidx/suites.hpp"

#include <cmath>
#include <sstream>

#include "symidx/novikov.hpp"

namespace symidx {

namespace {

// Per-suite stream salts so reordering suites never changes any draw.
constexpr std::uint64_t kSaltMaslov = 0x4d41534c4f560001ULL;
constexpr std::uint64_t kSaltHormander = 0x484f524d00000002ULL;
constexpr std::uint64_t kSaltTheorem = 0x5448454f00000003ULL;
constexpr std::uint64_t kSaltReflect = 0x5245464c00000004ULL;
constexpr std::uint64_t kSaltDiagonal = 0x444941470000005ULL;
constexpr std::uint64_t kSaltSymlin = 0x53594d4c00000006ULL;
constexpr std::uint64_t kSaltNovikov = 0x4e4f564b00000007ULL;

struct Tally {
  SuiteResult* r;

  void check(bool ok, const std::string& what) {
    if (ok) {
      ++r->pass;
    } else {
      ++r->fail;
      r->notes.push_back(what);
    }
  }

  void skip(const std::string& why) {
    ++r->skip;
    r->notes.push_back("skip: " + why);
  }
};

Mat block_diag(const Mat& a, const Mat& b) {
  Mat m = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

SymplecticPathSpec random_path(Rng& rng, int n, int min_seg, int max_seg, double amp,
                               double dmin, double dmax) {
  SymplecticPathSpec spec;
  spec.space = SympSpace::standard(n);
  const int count =
      min_seg + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_seg - min_seg + 1));
  for (int k = 0; k < count; ++k)
    spec.segments.push_back({random_symmetric(rng, 2 * n, amp), rng.uniform(dmin, dmax)});
  return spec;
}

bool is_degeneracy_skip(const Error& e) {
  return e.kind() == ErrKind::Nondegeneracy || e.kind() == ErrKind::IrregularCrossing ||
         e.kind() == ErrKind::Unresolved || e.kind() == ErrKind::DegenerateEndpoint ||
         e.kind() == ErrKind::Transversality || e.kind() == ErrKind::Degenerate;
}

std::string trial_tag(const char* suite, int i) {
  std::ostringstream os;
  os << suite << " trial " << i;
  return os.str();
}

}  // namespace

// --- rotation oracles --------------------------------------------------------

SuiteResult suite_rotation_oracles(const SuiteOptions& o) {
  SuiteResult r{"rotation-oracles"};
  Tally t{&r};
  const double pi = 3.14159265358979323846;
  const Mat s1 = pi * Mat::Identity(2, 2);
  const LagrangianFrame horiz = horizontal_frame(1);
  try {
    {
      const auto spec = SymplecticPathSpec::single(1, s1, 1.0);
      const HalfInt mu = maslov_index(LagrangianPath{spec, horiz}, horiz, o.index);
      t.check(mu == HalfInt::whole(1), "half-turn rotation index: got " + mu.str());
    }
    {
      const auto spec = SymplecticPathSpec::single(1, s1, 2.0);
      const HalfInt mu = maslov_index(LagrangianPath{spec, horiz}, horiz, o.index);
      t.check(mu == HalfInt::whole(2), "full-turn rotation index: got " + mu.str());
    }
    {
      const auto spec = SymplecticPathSpec::single(1, 0.5 * s1, 1.0);
      const HalfInt mu = cz_lagrangian(spec, o.index).value;
      t.check(mu == HalfInt::from_twice(1), "quarter-turn boundary index: got " + mu.str());
    }
    {
      const auto spec = SymplecticPathSpec::single(1, 0.5 * s1, 2.0);
      const HalfInt mu = cz_periodic(spec, o.index).value;
      t.check(mu == HalfInt::whole(1), "half-turn periodic index: got " + mu.str());
    }
    {
      const auto spec = SymplecticPathSpec::single(1, 2.0 * s1, 1.0);
      const HalfInt mu = cz_periodic(spec, o.index).value;
      t.check(mu == HalfInt::whole(2), "full-turn periodic index: got " + mu.str());
    }
  } catch (const Error& e) {
    t.check(false, std::string("rotation oracle raised: ") + e.what());
  }
  return r;
}

// --- maslov property suite ---------------------------------------------------

SuiteResult suite_maslov_properties(const SuiteOptions& o) {
  SuiteResult r{"maslov-properties"};
  Tally tal{&r};
  for (int i = 0; i < o.trials; ++i) {
    Rng rng = Rng::for_trial(o.seed ^ kSaltMaslov, static_cast<std::uint64_t>(i));
    const int n = 1 + i % 2;
    const SymplecticPathSpec spec = random_path(rng, n, 1, 3, 1.0, 0.3, 1.0);
    const SympSpace& space = spec.space;
    const LagrangianFrame seed = random_lagrangian(space, rng);
    const LagrangianFrame ref = random_lagrangian(space, rng);
    const LagrangianPath lp{spec, seed};
    const std::string tag = trial_tag("maslov", i);
    try {
      PathEvaluator ev(spec);
      const double T = ev.duration();
      const HalfInt base = maslov_index(lp, ref, o.index);

      const double cut = rng.uniform(0.2, 0.8) * T;
      const HalfInt left = maslov_index({subpath(spec, 0, cut), seed}, ref, o.index);
      const HalfInt right = maslov_index({subpath(spec, cut, T), seed}, ref, o.index);
      tal.check(left + right == base, tag + ": concatenation " + (left + right).str() +
                                          " != " + base.str());

      const Mat g = random_symplectic(space, rng, 0.7);
      const LagrangianFrame gref{g * ref.columns};
      const HalfInt moved = maslov_index({conjugate_path(spec, g), seed}, gref, o.index);
      tal.check(moved == base,
                tag + ": symplectic invariance " + moved.str() + " != " + base.str());

      const double factor = rng.uniform(0.5, 2.0);
      const HalfInt scaled = maslov_index({rescale_path(spec, factor), seed}, ref, o.index);
      tal.check(scaled == base,
                tag + ": reparametrization " + scaled.str() + " != " + base.str());

      const HalfInt back = maslov_index({reverse_path(spec), seed}, ref, o.index);
      tal.check(back == -base, tag + ": reversal " + back.str() + " != -" + base.str());

      {
        SymplecticPathSpec constant = SymplecticPathSpec::single(n, Mat::Zero(2 * n, 2 * n), 1.0);
        const LagrangianFrame l0 = random_lagrangian(space, rng);
        if (intersection_dimension(l0, ref, o.index.tol) == 0) {
          const HalfInt z = maslov_index({constant, l0}, ref, o.index);
          tal.check(z == HalfInt{}, tag + ": constant path index " + z.str() + " != 0");
        }
      }

      {
        Rng rng2 = Rng::for_trial(o.seed ^ kSaltMaslov, 0x10000ULL + static_cast<std::uint64_t>(i));
        SymplecticPathSpec other = random_path(rng2, 1, 1, 2, 1.0, 0.3, 1.0);
        other = rescale_path(other, T / other.total_duration());
        const LagrangianFrame seed2 = random_lagrangian(other.space, rng2);
        const LagrangianFrame ref2 = random_lagrangian(other.space, rng2);
        const HalfInt mu2 = maslov_index({other, seed2}, ref2, o.index);
        const SymplecticPathSpec sum = direct_sum_paths(spec, other, 1, 1);
        const LagrangianFrame seed_sum{block_diag(seed.columns, seed2.columns)};
        const LagrangianFrame ref_sum{block_diag(ref.columns, ref2.columns)};
        const HalfInt mu_sum = maslov_index({sum, seed_sum}, ref_sum, o.index);
        tal.check(mu_sum == base + mu2, tag + ": direct sum " + mu_sum.str() +
                                            " != " + (base + mu2).str());
      }

      {
        const auto xs = find_crossings(lp, ref, o.index);
        for (const Crossing& c : xs) {
          if (c.plateau || !c.regular || c.time <= 1e-6 || c.time >= T - 1e-6) continue;
          const QuadraticForm q1 = crossing_form(lp, ref, c.time, +1, o.index.tol);
          LagrangianFrame lam{ev(c.time) * seed.columns};
          for (int draw = 0; draw < 8; ++draw) {
            const LagrangianFrame w = random_lagrangian(space, rng);
            if (intersection_dimension(w, lam, o.index.tol) > 0) continue;
            const QuadraticForm q2 =
                crossing_form_via_complement(lp, ref, c.time, w, o.index.tol);
            const double diff = (q1.matrix - q2.matrix).lpNorm<Eigen::Infinity>();
            tal.check(diff < 1e-6,
                      tag + ": complement dependence of crossing form, diff " +
                          std::to_string(diff));
            break;
          }
          break;
        }
      }
    } catch (const Error& e) {
      if (is_degeneracy_skip(e))
        tal.skip(tag + ": " + e.what());
      else
        tal.check(false, tag + ": raised " + e.what());
    }
  }
  return r;
}

// --- Hormander suite ---------------------------------------------------------

SuiteResult suite_hormander(const SuiteOptions& o) {
  SuiteResult r{"hormander"};
  Tally tal{&r};
  for (int i = 0; i < o.trials; ++i) {
    Rng rng = Rng::for_trial(o.seed ^ kSaltHormander, static_cast<std::uint64_t>(i));
    const int n = 1 + i % 2;
    const SympSpace space = SympSpace::standard(n);
    const LagrangianFrame a = random_lagrangian(space, rng);
    const LagrangianFrame b = random_lagrangian(space, rng);
    const LagrangianFrame c = random_lagrangian(space, rng);
    const LagrangianFrame d = random_lagrangian(space, rng);
    const LagrangianFrame dp = random_lagrangian(space, rng);
    const std::string tag = trial_tag("hormander", i);
    try {
      const HalfInt lhs1 = hormander(space, a, b, a, c, rng, o.index);
      const HalfInt rhs1 = hormander(space, c, b, a, c, rng, o.index);
      tal.check(lhs1 == rhs1,
                tag + ": s(A,B;A,C) = " + lhs1.str() + " but s(C,B;A,C) = " + rhs1.str());

      const HalfInt s_cd = hormander(space, a, b, c, d, rng, o.index);
      const HalfInt s_cdp = hormander(space, a, b, c, dp, rng, o.index);
      const HalfInt s_dpd = hormander(space, a, b, dp, d, rng, o.index);
      tal.check(s_cd - s_cdp == s_dpd, tag + ": cocycle " + (s_cd - s_cdp).str() +
                                           " != " + s_dpd.str());

      const HalfInt again = hormander(space, a, b, c, d, rng, o.index);
      tal.check(again == s_cd,
                tag + ": path dependence " + again.str() + " != " + s_cd.str());

      if (intersection_dimension(a, b, o.index.tol) == 0 &&
          intersection_dimension(a, c, o.index.tol) == 0 &&
          intersection_dimension(b, c, o.index.tol) == 0) {
        const HalfInt sig = hormander_signature(space, a, b, c, o.index.tol);
        const HalfInt via_path = hormander(space, a, b, b, c, rng, o.index);
        tal.check(sig == via_path, tag + ": signature route " + sig.str() +
                                       " != path route " + via_path.str());
      }

      {
        const SympSpace doubled = SympSpace::direct_sum(space, space, 1, -1);
        const Mat f = random_symplectic(space, rng, 0.8);
        const LagrangianFrame g1 = graph_lagrangian(space, f);
        const Mat swap = swap_involution(space.dim());
        const LagrangianFrame g2{swap * g1.columns};
        const LagrangianFrame rn2{block_diag(horizontal_frame(n).columns,
                                             horizontal_frame(n).columns)};
        const LagrangianFrame diag = diagonal_frame(space.dim());
        const HalfInt fwd = hormander(doubled, rn2, diag, g1, g2, rng, o.index);
        const HalfInt bwd = hormander(doubled, rn2, diag, g2, g1, rng, o.index);
        tal.check(fwd == -bwd,
                  tag + ": factor-swap flip " + fwd.str() + " != -(" + bwd.str() + ")");
      }
    } catch (const Error& e) {
      if (is_degeneracy_skip(e))
        tal.skip(tag + ": " + e.what());
      else
        tal.check(false, tag + ": raised " + e.what());
    }
  }
  return r;
}

// --- index theorem fuzz ------------------------------------------------------

SuiteResult suite_index_theorem(const SuiteOptions& o) {
  SuiteResult r{"index-theorem"};
  Tally tal{&r};
  for (int n = 1; n <= 3; ++n) {
    int skipped = 0;
    for (int i = 0; i < o.trials; ++i) {
      Rng rng = Rng::for_trial(o.seed ^ kSaltTheorem,
                               static_cast<std::uint64_t>(n) * 100000 + static_cast<std::uint64_t>(i));
      HalfPathData h{random_path(rng, n, 1, 4, 1.5, 0.2, 1.0), Mat()};
      std::ostringstream tag;
      tag << "theorem n=" << n << " trial " << i;
      try {
        const DefectReport rep = verify_index_theorem(h, o.index);
        tal.check(rep.pass, tag.str() + ": defect " + rep.defect.str() + " (mu+ " +
                                rep.mu_plus.str() + ", mu- " + rep.mu_minus.str() +
                                ", loop " + rep.mu_loop.str() + ", sign(Q) " +
                                std::to_string(rep.q_signature) + ")");

        // Doubling symmetry F(t) = c F(2T - t) F_2^{-1} c along the way.
        const DoubledPath d = double_path(h);
        PathEvaluator ev(d.full);
        const double t2 = ev.duration();
        double worst = 0;
        for (int k = 0; k <= 8; ++k) {
          const double t = t2 * k / 8.0;
          const Mat lhs = ev(t);
          const Mat rhs = d.involution * ev(t2 - t) * d.monodromy.inverse() * d.involution;
          const double scale = std::max(1.0, lhs.lpNorm<Eigen::Infinity>());
          worst = std::max(worst, (lhs - rhs).lpNorm<Eigen::Infinity>() / scale);
        }
        std::ostringstream res;
        res.precision(3);
        res << worst;
        tal.check(worst < 1e-6, tag.str() + ": doubling symmetry residual " + res.str());
      } catch (const Error& e) {
        if (is_degeneracy_skip(e)) {
          ++skipped;
          ++r.skip;
        } else {
          tal.check(false, tag.str() + ": raised " + e.what());
        }
      }
    }
    std::ostringstream note;
    note << "n=" << n << ": " << skipped << "/" << o.trials << " degenerate draws skipped";
    r.notes.push_back(note.str());
  }
  return r;
}

// --- reflection suite --------------------------------------------------------

SuiteResult suite_reflection(const SuiteOptions& o) {
  SuiteResult tal_r{"reflection"};
  Tally tal{&tal_r};
  for (int n = 1; n <= 2; ++n) {
    for (int i = 0; i < o.trials; ++i) {
      Rng rng = Rng::for_trial(o.seed ^ kSaltReflect,
                               static_cast<std::uint64_t>(n) * 100000 + static_cast<std::uint64_t>(i));
      HalfPathData h{random_path(rng, n, 1, 3, 1.2, 0.2, 1.0), Mat()};
      std::ostringstream tag;
      tag << "reflection n=" << n << " trial " << i;
      try {
        tal.check(verify_reflection(h, o.index), tag.str() + ": indices differ");

        HalfPathData once{reflected_half(h), h.involution_or_default()};
        const SymplecticPathSpec twice = reflected_half(once);
        PathEvaluator orig(h.half), round(twice);
        double worst = 0;
        for (int k = 0; k <= 8; ++k) {
          const double t = orig.duration() * k / 8.0;
          worst = std::max(worst, (orig(t) - round(t)).lpNorm<Eigen::Infinity>());
        }
        tal.check(worst < 1e-7,
                  tag.str() + ": reflection involutivity residual " + std::to_string(worst));
      } catch (const Error& e) {
        if (is_degeneracy_skip(e))
          tal.skip(tag.str() + ": " + e.what());
        else
          tal.check(false, tag.str() + ": raised " + e.what());
      }
    }
  }
  return tal_r;
}

// --- diagonal suite ----------------------------------------------------------

SuiteResult suite_diagonal(const SuiteOptions& o) {
  SuiteResult r{"diagonal"};
  Tally tal{&r};
  for (int m = 1; m <= 2; ++m) {
    for (int i = 0; i < o.trials; ++i) {
      Rng rng = Rng::for_trial(o.seed ^ kSaltDiagonal,
                               static_cast<std::uint64_t>(m) * 100000 + static_cast<std::uint64_t>(i));
      SymplecticPathSpec phi = random_path(rng, m, 1, 3, 1.0, 0.3, 1.0);
      phi = rescale_path(phi, 2.0 / phi.total_duration());
      std::ostringstream tag;
      tag << "diagonal m=" << m << " trial " << i;
      try {
        const DiagonalReport rep = verify_diagonal(phi, o.index);
        tal.check(rep.sign_q_zero, tag.str() + ": sign(Q) = " +
                                       std::to_string(rep.q_signature) + " != 0");
        tal.check(rep.loop_equals_twice_half,
                  tag.str() + ": mu_loop " + rep.mu_loop.str() + " != 2 * " +
                      rep.mu_half.str());
        tal.check(rep.half_equals_factor_index,
                  tag.str() + ": mu_half " + rep.mu_half.str() + " != periodic " +
                      rep.mu_periodic.str());
      } catch (const Error& e) {
        if (is_degeneracy_skip(e))
          tal.skip(tag.str() + ": " + e.what());
        else
          tal.check(false, tag.str() + ": raised " + e.what());
      }

      // Split factors: the loop index of a product path is the sum of the
      // factors' loop indices.
      if (m == 2 && i % 5 == 0) {
        try {
          SymplecticPathSpec p1 = random_path(rng, 1, 1, 2, 1.0, 0.4, 1.0);
          p1 = rescale_path(p1, 2.0 / p1.total_duration());
          SymplecticPathSpec p2 = random_path(rng, 1, 1, 2, 1.0, 0.4, 1.0);
          p2 = rescale_path(p2, 2.0 / p2.total_duration());
          const SymplecticPathSpec prod = direct_sum_paths(p1, p2, 1, 1);
          const HalfInt whole = cz_periodic(diagonal_double(prod).full, o.index).value;
          const HalfInt part1 = cz_periodic(diagonal_double(p1).full, o.index).value;
          const HalfInt part2 = cz_periodic(diagonal_double(p2).full, o.index).value;
          tal.check(whole == part1 + part2,
                    tag.str() + ": split additivity " + whole.str() + " != " +
                        (part1 + part2).str());
        } catch (const Error& e) {
          if (is_degeneracy_skip(e))
            tal.skip(tag.str() + ": split check: " + e.what());
          else
            tal.check(false, tag.str() + ": split check raised " + e.what());
        }
      }
    }
  }
  return r;
}

// --- symplectic linear algebra suite ----------------------------------------

SuiteResult suite_symlin(const SuiteOptions& o) {
  SuiteResult r{"symlin"};
  Tally tal{&r};
  for (int i = 0; i < o.trials; ++i) {
    Rng rng = Rng::for_trial(o.seed ^ kSaltSymlin, static_cast<std::uint64_t>(i));
    const int n = 1 + i % 3;
    const SympSpace space = SympSpace::standard(n);
    const std::string tag = trial_tag("symlin", i);
    try {
      const Mat f = random_symplectic(space, rng);
      tal.check(std::abs(f.determinant() - 1.0) < 1e-6,
                tag + ": det of symplectic = " + std::to_string(f.determinant()));

      const SympSpace doubled = SympSpace::direct_sum(space, space, 1, -1);
      const LagrangianFrame graph = graph_lagrangian(space, f);
      tal.check(is_lagrangian(doubled, graph, 1e-7), tag + ": graph is not isotropic");
      Eigen::JacobiSVD<Mat> svd(Mat(f - Mat::Identity(2 * n, 2 * n)));
      int kernel = 0;
      for (int k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()(k) < 1e-9) ++kernel;
      const int meet = intersection_dimension(graph, diagonal_frame(2 * n), 1e-7);
      tal.check(meet == kernel, tag + ": graph/diagonal intersection " +
                                    std::to_string(meet) + " != dim ker(F-1) = " +
                                    std::to_string(kernel));

      const Mat q = random_symmetric(rng, 2 * n, 1.0);
      const Mat p = random_symplectic(space, rng, 0.6);
      const SignatureReport s1 = signature(QuadraticForm{q, Mat()}, 1e-9);
      const SignatureReport s2 =
          signature(QuadraticForm{Mat(p.transpose() * q * p), Mat()}, 1e-9);
      if (s1.degeneracy == 0 && s2.degeneracy == 0)
        tal.check(s1.signature == s2.signature,
                  tag + ": congruence changed signature " + std::to_string(s1.signature) +
                      " -> " + std::to_string(s2.signature));

      const LagrangianFrame a = random_lagrangian(space, rng);
      const LagrangianFrame w = lagrangian_complement(space, a);
      tal.check(is_lagrangian(space, w, 1e-7), tag + ": complement is not Lagrangian");
      tal.check(intersection_dimension(a, w, 1e-7) == 0,
                tag + ": complement is not transverse");

      const Mat c = conjugation_involution(n);
      const Mat back = c * (c * f * c) * c;
      tal.check((back - f).lpNorm<Eigen::Infinity>() < 1e-12,
                tag + ": conjugation is not involutive");
    } catch (const Error& e) {
      tal.check(false, tag + ": raised " + e.what());
    }
  }
  return r;
}

// --- Novikov suite -----------------------------------------------------------

namespace {

novikov::NovikovElement random_x_element(Rng& rng) {
  using namespace novikov;
  NovikovElement e(Lattice::X);
  const int terms = 1 + static_cast<int>(rng.next_u64() % 3);
  for (int t = 0; t < terms; ++t) {
    long long coeff = static_cast<long long>(rng.next_u64() % 6) - 3;
    if (coeff == 0) coeff = 1;
    ClassSymbol sym{Lattice::X,
                    {static_cast<int>(rng.next_u64() % 2), static_cast<int>(rng.next_u64() % 2),
                     0, 0},
                    false};
    Exponent exp = Exponent::zero(Lattice::X);
    for (int k = 0; k < 2; ++k) {
      exp.coeff[static_cast<size_t>(k)].base =
          Rational(static_cast<long long>(rng.next_u64() % 9) - 4, 2);
      exp.coeff[static_cast<size_t>(k)].h =
          Rational(static_cast<long long>(rng.next_u64() % 9) - 4, 2);
    }
    e.add_term(coeff, sym, exp);
  }
  return e;
}

novikov::SphereClass random_class(Rng& rng, novikov::Lattice l) {
  novikov::SphereClass c{l, {}};
  for (int k = 0; k < novikov::lattice_rank(l); ++k)
    c.c[static_cast<size_t>(k)] = static_cast<long long>(rng.next_u64() % 9) - 4;
  return c;
}

}  // namespace

SuiteResult suite_novikov(const SuiteOptions& o) {
  using namespace novikov;
  SuiteResult r{"novikov"};
  Tally tal{&r};
  try {
    const GoldenReport golden = verify_section33();
    tal.check(golden.pass, "golden pushforward: " + golden.diff);
    tal.check(to_string(golden.expected) == "[(01)+(10)]e^{1/2*(10)+h*[(10)-(01)]}",
              "canonical print of the golden element: got " + to_string(golden.expected));

    const NovikovElement r1 = parse_element("(0111)e^{1/2*(1000)}");
    tal.check(to_string(albers_delta1_pushforward(r1)) == "(01)e^{1/2*(10)}",
              "split pushforward 1: got " + to_string(albers_delta1_pushforward(r1)));
    const NovikovElement r2 = parse_element("-(1110)e^{-1/2*(0001)}");
    tal.check(to_string(albers_delta1_pushforward(r2)) == "(10)e^{1/2*(01)}",
              "split pushforward 2: got " + to_string(albers_delta1_pushforward(r2)));

    for (const auto& [num, den] : {std::pair<long long, long long>{5, 4}, {3, 2}, {2, 1}}) {
      const Rational lam(num, den);
      const MonotonicityReport w = monotonicity_witness(lam);
      tal.check(w.chern_value == 0 && w.area_value == lam - Rational(1) && w.not_monotone,
                "monotonicity witness at lambda=" + lam.str() + ": chern " +
                    std::to_string(w.chern_value) + ", area " + w.area_value.str());
    }
    {
      const SphereClass a10 = SphereClass::basis(Lattice::X, 0);
      tal.check(chern(a10) == 2 && area(a10, Rational(3, 2)) == Rational(1),
                "first-factor class invariants");
    }
  } catch (const Error& e) {
    tal.check(false, std::string("novikov fixed checks raised: ") + e.what());
  }

  for (int i = 0; i < o.trials; ++i) {
    Rng rng = Rng::for_trial(o.seed ^ kSaltNovikov, static_cast<std::uint64_t>(i));
    const std::string tag = trial_tag("novikov", i);
    try {
      const NovikovElement e = random_x_element(rng);
      tal.check(tau(tau(e)) == e, tag + ": tau is not involutive on " + to_string(e));
      const NovikovElement reparsed = parse_element(to_string(e));
      tal.check(reparsed == e, tag + ": round trip changed " + to_string(e) + " to " +
                                   to_string(reparsed));

      const SphereClass beta = random_class(rng, Lattice::X);
      const SphereClass gamma = random_class(rng, Lattice::X);
      // j(beta, 0) and the diagonal j(beta, beta) inside the four-lattice.
      SphereClass jb{Lattice::M, {beta.c[0], beta.c[1], 0, 0}};
      SphereClass jdiag{Lattice::M, {beta.c[0], beta.c[1], beta.c[0], beta.c[1]}};
      tal.check(delta1_class(jb) == beta, tag + ": delta_1 on j(beta, 0)");
      tal.check(delta1_class(jdiag).is_zero(), tag + ": delta_1 on the diagonal");

      const SphereClass m1 = random_class(rng, Lattice::M);
      const SphereClass m2 = random_class(rng, Lattice::M);
      tal.check(delta1_class(m1 + m2) == delta1_class(m1) + delta1_class(m2),
                tag + ": delta_1 additivity");
      tal.check(chern(m1 + m2) == chern(m1) + chern(m2), tag + ": chern additivity");
      const Rational lam(7, 5);
      tal.check(area(m1 + m2, lam) == area(m1, lam) + area(m2, lam),
                tag + ": area additivity");
      tal.check(chern(beta + gamma) == chern(beta) + chern(gamma),
                tag + ": chern additivity on the split lattice");

      // delta_2 composed with a delta_1 section realizes exponent negation.
      NovikovElement lift(Lattice::M);
      lift.add_term(1, ClassSymbol::unit_symbol(),
                    Exponent::of_class(jb, Rational(1)));
      const NovikovElement pushed = delta2(lift);
      NovikovElement negated(Lattice::X);
      negated.add_term(1, ClassSymbol::unit_symbol(),
                       -Exponent::of_class(beta, Rational(1)));
      tal.check(pushed.terms().size() == 1 &&
                    pushed.terms()[0].exponent == negated.terms()[0].exponent,
                tag + ": delta_2 after the j-section is not exponent negation");
    } catch (const Error& e) {
      tal.check(false, tag + ": raised " + e.what());
    }
  }

  // The displayed delta_2 sign example: e^{j((10),0)} keeps sign +1.
  try {
    using namespace novikov;
    NovikovElement e(Lattice::M);
    e.add_term(1, ClassSymbol::unit_symbol(),
               Exponent::of_class(SphereClass::basis(Lattice::M, 0), Rational(1)));
    const NovikovElement out = delta2(e);
    tal.check(out.terms().size() == 1 && out.terms()[0].coeff == 1,
              "delta_2 sign on e^{j(A,0)}");
    tal.check(out.terms()[0].exponent ==
                  -Exponent::of_class(SphereClass::basis(Lattice::X, 0), Rational(1)),
              "delta_2 exponent on e^{j(A,0)}");
  } catch (const Error& e) {
    tal.check(false, std::string("delta_2 example raised: ") + e.what());
  }
  return r;
}

std::vector<SuiteResult> run_all_suites(const SuiteOptions& o) {
  std::vector<SuiteResult> out;
  out.push_back(suite_rotation_oracles(o));
  out.push_back(suite_symlin(o));
  out.push_back(suite_maslov_properties(o));
  out.push_back(suite_hormander(o));
  out.push_back(suite_index_theorem(o));
  out.push_back(suite_reflection(o));
  out.push_back(suite_diagonal(o));
  out.push_back(suite_novikov(o));
  return out;
}

}  // namespace symidx
