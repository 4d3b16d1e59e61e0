#ifndef AKUCB_BLOSSOM_HPP
#define AKUCB_BLOSSOM_HPP

#include <algorithm>
#include <cassert>
#include <tuple>
#include <vector>

namespace akucb {

// Exact maximum weight matching on general graphs, O(V^3).
//
// Classic primal-dual blossom-shrinking implementation over edge endpoints
// (edge k has endpoints 2k and 2k+1). Vertices are 0..n-1, blossoms n..2n-1.
// Returns mate[v] = matched partner vertex or -1. Weights may be any
// nonnegative doubles; slack tests use <= 0 so the usual floating-point
// dust from dual updates does not stall progress.
class BlossomMatcher {
public:
    BlossomMatcher(int nvertex, const std::vector<std::tuple<int, int, double>>& edge_list)
        : nvertex_(nvertex), edges_(edge_list) {}

    std::vector<int> solve() {
        const int n = nvertex_;
        const int m = static_cast<int>(edges_.size());
        if (n == 0 || m == 0) return std::vector<int>(n, -1);

        double maxweight = 0.0;
        for (const auto& [i, j, w] : edges_) maxweight = std::max(maxweight, w);

        endpoint_.resize(2 * m);
        for (int p = 0; p < 2 * m; ++p)
            endpoint_[p] = (p % 2 == 0) ? std::get<0>(edges_[p / 2]) : std::get<1>(edges_[p / 2]);

        neighbend_.assign(n, {});
        for (int k = 0; k < m; ++k) {
            neighbend_[std::get<0>(edges_[k])].push_back(2 * k + 1);
            neighbend_[std::get<1>(edges_[k])].push_back(2 * k);
        }

        mate_.assign(n, -1);
        label_.assign(2 * n, 0);
        labelend_.assign(2 * n, -1);
        inblossom_.resize(n);
        for (int v = 0; v < n; ++v) inblossom_[v] = v;
        blossomparent_.assign(2 * n, -1);
        blossomchilds_.assign(2 * n, {});
        blossombase_.resize(2 * n);
        for (int v = 0; v < n; ++v) blossombase_[v] = v;
        for (int b = n; b < 2 * n; ++b) blossombase_[b] = -1;
        blossomendps_.assign(2 * n, {});
        bestedge_.assign(2 * n, -1);
        blossombestedges_.assign(2 * n, {});
        blossombestedges_valid_.assign(2 * n, false);
        unusedblossoms_.clear();
        for (int b = n; b < 2 * n; ++b) unusedblossoms_.push_back(b);
        dualvar_.assign(2 * n, 0.0);
        for (int v = 0; v < n; ++v) dualvar_[v] = maxweight;
        allowedge_.assign(m, false);
        queue_.clear();

        for (int iter = 0; iter < n; ++iter) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = n; b < 2 * n; ++b) {
                blossombestedges_[b].clear();
                blossombestedges_valid_[b] = false;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), false);
            queue_.clear();

            for (int v = 0; v < n; ++v)
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);

            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    const int v = queue_.back();
                    queue_.pop_back();
                    assert(label_[inblossom_[v]] == 1);
                    for (int p : neighbend_[v]) {
                        const int k = p / 2;
                        const int w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) continue;
                        double kslack = 0.0;
                        if (!allowedge_[k]) {
                            kslack = slack(k);
                            if (kslack <= 0.0) allowedge_[k] = true;
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                const int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                assert(label_[inblossom_[w]] == 2);
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        } else if (label_[inblossom_[w]] == 1) {
                            const int b = inblossom_[v];
                            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
                        } else if (label_[w] == 0) {
                            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
                        }
                    }
                }
                if (augmented) break;

                // No augmenting path; adjust duals.
                int deltatype = -1;
                double delta = 0.0;
                int deltaedge = -1, deltablossom = -1;

                deltatype = 1;
                delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n);
                delta = std::max(0.0, delta);

                for (int v = 0; v < n; ++v) {
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        const double d = slack(bestedge_[v]);
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                }
                for (int b = 0; b < 2 * n; ++b) {
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        const double d = slack(bestedge_[b]) / 2.0;
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                }
                for (int b = n; b < 2 * n; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                        (deltatype == -1 || dualvar_[b] < delta)) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }

                for (int v = 0; v < n; ++v) {
                    const int lab = label_[inblossom_[v]];
                    if (lab == 1)
                        dualvar_[v] -= delta;
                    else if (lab == 2)
                        dualvar_[v] += delta;
                }
                for (int b = n; b < 2 * n; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1)
                            dualvar_[b] += delta;
                        else if (label_[b] == 2)
                            dualvar_[b] -= delta;
                    }
                }

                if (deltatype == 1) break;
                if (deltatype == 2) {
                    allowedge_[deltaedge] = true;
                    int i = std::get<0>(edges_[deltaedge]);
                    int j = std::get<1>(edges_[deltaedge]);
                    if (label_[inblossom_[i]] == 0) std::swap(i, j);
                    assert(label_[inblossom_[i]] == 1);
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = true;
                    queue_.push_back(std::get<0>(edges_[deltaedge]));
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) break;

            for (int b = n; b < 2 * n; ++b)
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 &&
                    dualvar_[b] == 0.0)
                    expand_blossom(b, true);
        }

        std::vector<int> out(n, -1);
        for (int v = 0; v < n; ++v)
            if (mate_[v] >= 0) out[v] = endpoint_[mate_[v]];
        return out;
    }

private:
    double slack(int k) const {
        const auto& [i, j, w] = edges_[k];
        return dualvar_[i] + dualvar_[j] - 2.0 * w;
    }

    void blossom_leaves(int b, std::vector<int>& out) const {
        if (b < nvertex_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[b]) blossom_leaves(t, out);
    }

    void assign_label(int w, int t, int p) {
        const int b = inblossom_[w];
        assert(label_[w] == 0 && label_[b] == 0);
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            std::vector<int> leaves;
            blossom_leaves(b, leaves);
            queue_.insert(queue_.end(), leaves.begin(), leaves.end());
        } else if (t == 2) {
            const int base = blossombase_[b];
            assert(mate_[base] >= 0);
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    // Trace back from v and w to find a common ancestor (new blossom base)
    // or -1 when the paths end in different trees (augmenting path found).
    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            assert(label_[b] == 1);
            path.push_back(b);
            label_[b] = 5;
            assert(labelend_[b] == mate_[blossombase_[b]]);
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                assert(label_[b] == 2);
                assert(labelend_[b] >= 0);
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) std::swap(v, w);
        }
        for (int b : path) label_[b] = 1;
        return base;
    }

    void add_blossom(int base, int k) {
        int v = std::get<0>(edges_[k]);
        int w = std::get<1>(edges_[k]);
        const int bb = inblossom_[base];
        int bv = inblossom_[v];
        int bw = inblossom_[w];
        const int b = unusedblossoms_.back();
        unusedblossoms_.pop_back();

        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;

        std::vector<int> path, endps;
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            assert(label_[bv] == 2 || (label_[bv] == 1 && labelend_[bv] == mate_[blossombase_[bv]]));
            assert(labelend_[bv] >= 0);
            v = endpoint_[labelend_[bv]];
            bv = inblossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            assert(label_[bw] == 2 || (label_[bw] == 1 && labelend_[bw] == mate_[blossombase_[bw]]));
            assert(labelend_[bw] >= 0);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }

        assert(label_[bb] == 1);
        blossomchilds_[b] = path;
        blossomendps_[b] = endps;
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = 0.0;

        std::vector<int> leaves;
        blossom_leaves(b, leaves);
        for (int lv : leaves) {
            if (label_[inblossom_[lv]] == 2) queue_.push_back(lv);
            inblossom_[lv] = b;
        }

        // Recompute best edges into the new blossom.
        std::vector<int> bestedgeto(2 * nvertex_, -1);
        for (int child : path) {
            std::vector<std::vector<int>> nblists;
            if (!blossombestedges_valid_[child]) {
                std::vector<int> childleaves;
                blossom_leaves(child, childleaves);
                for (int lv : childleaves) {
                    std::vector<int> lst;
                    lst.reserve(neighbend_[lv].size());
                    for (int p : neighbend_[lv]) lst.push_back(p / 2);
                    nblists.push_back(std::move(lst));
                }
            } else {
                nblists.push_back(blossombestedges_[child]);
            }
            for (const auto& nblist : nblists) {
                for (int ek : nblist) {
                    int i = std::get<0>(edges_[ek]);
                    int j = std::get<1>(edges_[ek]);
                    if (inblossom_[j] == b) std::swap(i, j);
                    const int bj = inblossom_[j];
                    if (bj != b && label_[bj] == 1 &&
                        (bestedgeto[bj] == -1 || slack(ek) < slack(bestedgeto[bj])))
                        bestedgeto[bj] = ek;
                }
            }
            blossombestedges_[child].clear();
            blossombestedges_valid_[child] = false;
            bestedge_[child] = -1;
        }
        blossombestedges_[b].clear();
        for (int ek : bestedgeto)
            if (ek != -1) blossombestedges_[b].push_back(ek);
        blossombestedges_valid_[b] = true;
        bestedge_[b] = -1;
        for (int ek : blossombestedges_[b])
            if (bestedge_[b] == -1 || slack(ek) < slack(bestedge_[b])) bestedge_[b] = ek;
    }

    void expand_blossom(int b, bool endstage) {
        for (int s : blossomchilds_[b]) {
            blossomparent_[s] = -1;
            if (s < nvertex_) {
                inblossom_[s] = s;
            } else if (endstage && dualvar_[s] == 0.0) {
                expand_blossom(s, endstage);
            } else {
                std::vector<int> leaves;
                blossom_leaves(s, leaves);
                for (int v : leaves) inblossom_[v] = s;
            }
        }

        if (!endstage && label_[b] == 2) {
            // Relabel the even-alternating half of the blossom path walked by
            // the T-label entry, leave the rest for later scans.
            assert(labelend_[b] >= 0);
            const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            int j = 0;
            const int nchild = static_cast<int>(blossomchilds_[b].size());
            for (int idx = 0; idx < nchild; ++idx)
                if (blossomchilds_[b][idx] == entrychild) {
                    j = idx;
                    break;
                }
            int jstep, endptrick;
            if (j & 1) {
                j -= nchild;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            auto child_at = [&](int idx) {
                return blossomchilds_[b][(idx % nchild + nchild) % nchild];
            };
            auto endp_at = [&](int idx) {
                return blossomendps_[b][(idx % nchild + nchild) % nchild];
            };
            int p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[endp_at(j - endptrick) ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[endp_at(j - endptrick) / 2] = true;
                j += jstep;
                p = endp_at(j - endptrick) ^ endptrick;
                allowedge_[p / 2] = true;
                j += jstep;
            }
            const int bv = child_at(j);
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (child_at(j) != entrychild) {
                const int bw = child_at(j);
                if (label_[bw] == 1) {
                    j += jstep;
                    continue;
                }
                std::vector<int> leaves;
                blossom_leaves(bw, leaves);
                int labelled = -1;
                for (int v : leaves)
                    if (label_[v] != 0) {
                        labelled = v;
                        break;
                    }
                if (labelled != -1) {
                    assert(label_[labelled] == 2);
                    assert(inblossom_[labelled] == bw);
                    label_[labelled] = 0;
                    label_[endpoint_[mate_[blossombase_[bw]]]] = 0;
                    assign_label(labelled, 2, labelend_[labelled]);
                }
                j += jstep;
            }
        }

        label_[b] = -1;
        labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        blossombestedges_valid_[b] = false;
        bestedge_[b] = -1;
        unusedblossoms_.push_back(b);
    }

    // Swap matched/unmatched edges along the blossom path from its base to
    // vertex v, then rotate so v becomes the base.
    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[t] != b) t = blossomparent_[t];
        if (t >= nvertex_) augment_blossom(t, v);

        const int nchild = static_cast<int>(blossomchilds_[b].size());
        int i = 0;
        for (int idx = 0; idx < nchild; ++idx)
            if (blossomchilds_[b][idx] == t) {
                i = idx;
                break;
            }
        int j = i, jstep, endptrick;
        if (i & 1) {
            j -= nchild;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        auto child_at = [&](int idx) { return blossomchilds_[b][(idx % nchild + nchild) % nchild]; };
        auto endp_at = [&](int idx) { return blossomendps_[b][(idx % nchild + nchild) % nchild]; };
        while (j != 0) {
            j += jstep;
            int tc = child_at(j);
            const int p = endp_at(j - endptrick) ^ endptrick;
            if (tc >= nvertex_) augment_blossom(tc, endpoint_[p]);
            j += jstep;
            tc = child_at(j);
            if (tc >= nvertex_) augment_blossom(tc, endpoint_[p ^ 1]);
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }

        std::rotate(blossomchilds_[b].begin(), blossomchilds_[b].begin() + i,
                    blossomchilds_[b].end());
        std::rotate(blossomendps_[b].begin(), blossomendps_[b].begin() + i,
                    blossomendps_[b].end());
        blossombase_[b] = blossombase_[blossomchilds_[b][0]];
        assert(blossombase_[b] == v);
    }

    void augment_matching(int k) {
        const int v0 = std::get<0>(edges_[k]);
        const int w0 = std::get<1>(edges_[k]);
        const std::pair<int, int> starts[2] = {{v0, 2 * k + 1}, {w0, 2 * k}};
        for (const auto& [sv, sp] : starts) {
            int s = sv, p = sp;
            while (true) {
                const int bs = inblossom_[s];
                assert(label_[bs] == 1);
                assert(labelend_[bs] == mate_[blossombase_[bs]]);
                if (bs >= nvertex_) augment_blossom(bs, s);
                mate_[s] = p;
                if (labelend_[bs] == -1) break;
                const int t = endpoint_[labelend_[bs]];
                const int bt = inblossom_[t];
                assert(label_[bt] == 2);
                assert(labelend_[bt] >= 0);
                s = endpoint_[labelend_[bt]];
                const int j = endpoint_[labelend_[bt] ^ 1];
                assert(blossombase_[bt] == t);
                if (bt >= nvertex_) augment_blossom(bt, j);
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    int nvertex_;
    std::vector<std::tuple<int, int, double>> edges_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<char> blossombestedges_valid_;
    std::vector<int> unusedblossoms_;
    std::vector<double> dualvar_;
    std::vector<bool> allowedge_;
    std::vector<int> queue_;
};

// mate[v] partner array for the maximum weight matching of the given
// weighted edge list.
inline std::vector<int> max_weight_matching_mates(
    int nvertex, const std::vector<std::tuple<int, int, double>>& edges) {
    return BlossomMatcher(nvertex, edges).solve();
}

} // namespace akucb

#endif
