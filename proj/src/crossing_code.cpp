#include "curvetp/crossing_code.hpp"

#include "curvetp/error.hpp"

#include <algorithm>
#include <array>

namespace curvetp {

bool structurally_valid(const SignedCrossingCode& code) {
  const int len = code.positions();
  if (code.sign.size() != code.twin.size() || len % 2 != 0) return false;
  for (int i = 0; i < len; ++i) {
    int t = code.twin[i];
    if (t < 0 || t >= len || t == i || code.twin[t] != i) return false;
    if ((t - i) % 2 == 0) return false;
    if (code.sign[i] != 1 && code.sign[i] != -1) return false;
    if (code.sign[t] != -code.sign[i]) return false;
  }
  return true;
}

namespace {

// Builds the rotation system only; faces are traced separately so that
// realizable() can reuse it on structurally valid but non-planar codes.
PlaneMap build_rotation(const SignedCrossingCode& code) {
  PlaneMap map;
  const int len = code.positions();
  const int n = code.n();
  map.vertex_count = n;
  map.edge_count = len;
  map.simple_curve = n == 0;
  map.vertex_of_position.assign(len, -1);
  int next_vertex = 0;
  for (int k = 0; k < len; ++k) {
    if (map.vertex_of_position[k] < 0) {
      map.vertex_of_position[k] = next_vertex;
      map.vertex_of_position[code.twin[k]] = next_vertex;
      ++next_vertex;
    }
  }
  map.tail.assign(2 * len, -1);
  map.rotation_next.assign(2 * len, -1);
  map.rotation_prev.assign(2 * len, -1);
  for (int a = 0; a < len; ++a) {
    map.tail[PlaneMap::forward_dart(a)] = map.vertex_of_position[a];
    map.tail[PlaneMap::backward_dart(a)] = map.vertex_of_position[(a + 1) % len];
  }
  for (int k = 0; k < len; ++k) {
    if (code.sign[k] != 1) continue;
    // Strand k crosses strand t from right to left, so strand t points 90
    // degrees clockwise from strand k. Counterclockwise from k's outgoing dart:
    // t's incoming side, k's incoming side, t's outgoing dart.
    const int t = code.twin[k];
    const std::array<int, 4> ring = {
        PlaneMap::forward_dart(k),
        PlaneMap::backward_dart((t - 1 + len) % len),
        PlaneMap::backward_dart((k - 1 + len) % len),
        PlaneMap::forward_dart(t),
    };
    for (int i = 0; i < 4; ++i) {
      map.rotation_next[ring[i]] = ring[(i + 1) % 4];
      map.rotation_prev[ring[(i + 1) % 4]] = ring[i];
    }
  }
  return map;
}

void trace_faces(PlaneMap& map) {
  const int darts = static_cast<int>(map.tail.size());
  map.face_of_dart.assign(darts, -1);
  map.faces.clear();
  for (int start = 0; start < darts; ++start) {
    if (map.face_of_dart[start] >= 0) continue;
    const int face = static_cast<int>(map.faces.size());
    std::vector<int> cycle;
    int d = start;
    do {
      map.face_of_dart[d] = face;
      cycle.push_back(d);
      // Face on the left: at the head, turn to the next dart clockwise.
      d = map.rotation_prev[PlaneMap::reverse(d)];
    } while (d != start);
    map.faces.push_back(std::move(cycle));
  }
}

SignedCrossingCode reindex(const SignedCrossingCode& code, const std::vector<int>& old_of_new) {
  const int len = code.positions();
  std::vector<int> new_of_old(len);
  for (int j = 0; j < len; ++j) new_of_old[old_of_new[j]] = j;
  SignedCrossingCode out;
  out.twin.resize(len);
  out.sign.resize(len);
  for (int j = 0; j < len; ++j) {
    out.twin[j] = new_of_old[code.twin[old_of_new[j]]];
    out.sign[j] = code.sign[old_of_new[j]];
  }
  return out;
}

}  // namespace

bool realizable(const SignedCrossingCode& code) {
  if (!structurally_valid(code)) return false;
  if (code.n() == 0) return true;
  PlaneMap map = build_rotation(code);
  trace_faces(map);
  return map.face_count() == code.n() + 2;
}

ValidationReport validate(const SignedCrossingCode& code) {
  ValidationReport r;
  const int len = code.positions();
  if (code.sign.size() != code.twin.size() || len % 2 != 0) {
    r.lengths_match = false;
    r.failures.push_back("twin and sign must have the same even length");
    r.realizable = false;
    return r;
  }
  for (int i = 0; i < len; ++i) {
    int t = code.twin[i];
    if (t < 0 || t >= len) {
      r.in_range = false;
      continue;
    }
    if (code.twin[t] != i) r.involution = false;
    if (t == i) r.fixed_point_free = false;
    if ((t - i) % 2 == 0) r.parity = false;
    if (code.sign[i] != 1 && code.sign[i] != -1) r.sign_values = false;
    else if (code.sign[t] != -code.sign[i]) r.sign_antisymmetric = false;
  }
  if (!r.in_range) r.failures.push_back("twin entry out of range");
  if (!r.involution) r.failures.push_back("twin is not an involution");
  if (!r.fixed_point_free) r.failures.push_back("twin has fixed points");
  if (!r.parity) r.failures.push_back("twin[i] and i must have opposite parity");
  if (!r.sign_values) r.failures.push_back("sign entries must be +1 or -1");
  if (!r.sign_antisymmetric) r.failures.push_back("sign[twin[i]] must equal -sign[i]");
  r.realizable = realizable(code);
  if (!r.realizable) r.failures.push_back("code is not realizable on the sphere");
  return r;
}

PlaneMap image_graph(const SignedCrossingCode& code) {
  if (!realizable(code)) throw Error(ErrorKind::NotRealizable, "code does not describe a plane curve");
  if (code.n() == 0) {
    PlaneMap map;
    map.simple_curve = true;
    map.edge_count = 1;
    // One closed arc: left side is the bounded face, right side the outer one.
    map.faces = {{0}, {1}};
    map.face_of_dart = {0, 1};
    map.outer_face = 1;
    return map;
  }
  PlaneMap map = build_rotation(code);
  trace_faces(map);
  // The basepoint sits on the last arc; the outer face is on its right.
  map.outer_face = map.face_of_dart[PlaneMap::backward_dart(code.positions() - 1)];
  return map;
}

std::vector<SignedCrossingCode> equivalent_codes(const SignedCrossingCode& code) {
  PlaneMap map = image_graph(code);
  if (code.n() == 0) return {code};
  const int len = code.positions();
  std::vector<SignedCrossingCode> out;
  std::vector<int> order(len);
  for (int a = 0; a < len; ++a) {
    if (map.face_of_dart[PlaneMap::backward_dart(a)] == map.outer_face) {
      for (int j = 0; j < len; ++j) order[j] = (a + 1 + j) % len;
      out.push_back(reindex(code, order));
    }
    if (map.face_of_dart[PlaneMap::forward_dart(a)] == map.outer_face) {
      // Walking arc a backwards, the first crossing met is position a.
      for (int j = 0; j < len; ++j) order[j] = ((a - j) % len + len) % len;
      out.push_back(reindex(code, order));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool codes_isotopic(const SignedCrossingCode& a, const SignedCrossingCode& b) {
  if (!realizable(a) || !realizable(b)) throw Error(ErrorKind::NotRealizable, "codes_isotopic");
  if (a.n() != b.n()) return false;
  auto eq = equivalent_codes(a);
  return std::binary_search(eq.begin(), eq.end(), b);
}

SignedCrossingCode mirror(const SignedCrossingCode& code) {
  SignedCrossingCode out = code;
  for (int& s : out.sign) s = -s;
  return out;
}

}  // namespace curvetp
