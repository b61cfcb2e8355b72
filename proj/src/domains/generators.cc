#include "generators.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace std;

namespace wbp {

string cell_name(int x, int y) {
    return "c" + to_string(x) + "_" + to_string(y);
}

namespace {

void require(bool ok, const string &msg) {
    if (!ok)
        throw InvalidParams(msg);
}

void check_keys(const DomainSpec &spec, const set<string> &allowed) {
    for (const auto &[key, value] : spec.params)
        require(allowed.count(key), spec.name + ": unknown parameter '" + key + "'");
}

struct Builder {
    GroundProblem problem;

    explicit Builder(const string &name, const DomainSpec &spec) {
        problem.name = name;
        problem.domain = spec.name;
        problem.params = spec.params;
    }

    AtomId atom(const string &name) {
        return problem.universe.add(name);
    }

    GroundAction &action(const string &name) {
        problem.actions.push_back(GroundAction{name, {}, {}, {}, {}, {}, {}});
        return problem.actions.back();
    }

    GroundProblem finish(const vector<AtomId> &init_atoms, const vector<AtomId> &goal_atoms) {
        problem.init = Bitset(problem.universe.size());
        for (AtomId id : init_atoms)
            problem.init.set(id);
        problem.goal = goal_atoms;
        problem.finalize();
        return std::move(problem);
    }
};

// Declares the full stack/unstack action set over the given blocks.
void add_blocks_actions(Builder &b, const vector<string> &blocks) {
    for (const string &x : blocks) {
        for (const string &y : blocks) {
            if (x == y)
                continue;
            GroundAction &stack = b.action("stack(" + x + "," + y + ")");
            stack.pre = {b.atom("hold(" + x + ")"), b.atom("clear(" + y + ")")};
            stack.add = {b.atom("on(" + x + "," + y + ")"), b.atom("clear(" + x + ")"),
                         b.atom("armempty")};
            stack.del = {b.atom("hold(" + x + ")"), b.atom("clear(" + y + ")")};

            GroundAction &unstack = b.action("unstack(" + x + "," + y + ")");
            unstack.pre = {b.atom("on(" + x + "," + y + ")"), b.atom("clear(" + x + ")"),
                           b.atom("armempty")};
            unstack.add = {b.atom("hold(" + x + ")"), b.atom("clear(" + y + ")")};
            unstack.del = {b.atom("on(" + x + "," + y + ")"), b.atom("clear(" + x + ")"),
                           b.atom("armempty")};
        }
    }
    for (const string &x : blocks) {
        GroundAction &pickup = b.action("pickup(" + x + ")");
        pickup.pre = {b.atom("ontable(" + x + ")"), b.atom("clear(" + x + ")"),
                      b.atom("armempty")};
        pickup.add = {b.atom("hold(" + x + ")")};
        pickup.del = {b.atom("ontable(" + x + ")"), b.atom("clear(" + x + ")"),
                      b.atom("armempty")};

        GroundAction &putdown = b.action("putdown(" + x + ")");
        putdown.pre = {b.atom("hold(" + x + ")")};
        putdown.add = {b.atom("ontable(" + x + ")"), b.atom("clear(" + x + ")"),
                       b.atom("armempty")};
        putdown.del = {b.atom("hold(" + x + ")")};
    }
}

// Init atoms for towers given bottom-to-top block lists.
vector<AtomId> blocks_init(Builder &b, const vector<vector<string>> &towers) {
    vector<AtomId> init = {b.atom("armempty")};
    for (const vector<string> &tower : towers) {
        init.push_back(b.atom("ontable(" + tower.front() + ")"));
        for (size_t i = 1; i < tower.size(); ++i)
            init.push_back(b.atom("on(" + tower[i] + "," + tower[i - 1] + ")"));
        init.push_back(b.atom("clear(" + tower.back() + ")"));
    }
    return init;
}

GroundProblem generate_blocks_clear(const DomainSpec &spec) {
    check_keys(spec, {"blocks"});
    int m = spec.get("blocks", -1);
    require(m >= 1, "blocks_clear: blocks must be >= 1");

    Builder b("blocks_clear_" + to_string(m), spec);
    vector<string> blocks = {"x"};
    // b1 is the top block, bm sits on x.
    vector<string> tower = {"x"};
    for (int i = m; i >= 1; --i) {
        blocks.push_back("b" + to_string(i));
        tower.push_back("b" + to_string(i));
    }
    add_blocks_actions(b, blocks);
    vector<AtomId> init = blocks_init(b, {tower});
    vector<AtomId> goal = {b.atom("clear(x)"), b.atom("armempty")};
    return b.finish(init, goal);
}

GroundProblem generate_blocks_on(const DomainSpec &spec) {
    check_keys(spec, {"towers", "height", "blocks", "seed", "buried"});
    if (spec.has("blocks")) {
        // Towers with the goal on(b1,b2), on(b2,b3), ..., i.e. build the
        // tower with b1 on top. The init is seeded random, or with buried=1
        // the correctly stacked rest sits on top of b1.
        int n = spec.get("blocks", -1);
        require(n >= 2, "blocks_on: blocks must be >= 2");
        unsigned seed = unsigned(spec.get("seed", 0));
        bool buried = spec.get("buried", 0) != 0;

        Builder b(buried ? "blocks_" + to_string(n) + "_buried"
                         : "blocks_" + to_string(n) + "_seed" + to_string(seed),
                  spec);
        vector<string> blocks;
        for (int i = 1; i <= n; ++i)
            blocks.push_back("b" + to_string(i));
        add_blocks_actions(b, blocks);

        vector<vector<string>> towers;
        if (buried) {
            // Bottom to top: b1, bn, b(n-1), ..., b2.
            towers.push_back({"b1"});
            for (int i = n; i >= 2; --i)
                towers.back().push_back("b" + to_string(i));
        } else {
            mt19937 rng(seed);
            for (const string &block : blocks) {
                int choice = int(rng() % (towers.size() + 1));
                if (choice == int(towers.size()))
                    towers.push_back({block});
                else
                    towers[choice].push_back(block);
            }
        }
        vector<AtomId> init = blocks_init(b, towers);
        vector<AtomId> goal;
        for (int i = 1; i < n; ++i)
            goal.push_back(b.atom("on(b" + to_string(i) + ",b" + to_string(i + 1) + ")"));
        return b.finish(init, goal);
    }

    int towers = spec.get("towers", 2);
    require(towers == 2, "blocks_on: only towers=2 is supported");
    int height = spec.get("height", -1);
    require(height >= 1, "blocks_on: height must be >= 1");

    Builder b("blocks_on_" + to_string(height), spec);
    vector<string> blocks = {"x", "y"};
    vector<string> tower_x = {"x"}, tower_y = {"y"};
    for (int i = height - 1; i >= 1; --i) {
        blocks.push_back("b" + to_string(i));
        blocks.push_back("d" + to_string(i));
        tower_x.push_back("b" + to_string(i));
        tower_y.push_back("d" + to_string(i));
    }
    add_blocks_actions(b, blocks);
    vector<AtomId> init = blocks_init(b, {tower_x, tower_y});
    vector<AtomId> goal = {b.atom("on(x,y)")};
    return b.finish(init, goal);
}

GroundProblem generate_boxes(const DomainSpec &spec) {
    set<string> allowed = {"boxes", "marbles", "encoding"};
    int k = spec.get("boxes", -1);
    require(k >= 1 && k <= 8, "boxes: boxes must be in 1..8");
    for (int i = 1; i <= k; ++i)
        allowed.insert("marbles" + to_string(i));
    check_keys(spec, allowed);

    int encoding = spec.get("encoding", 4);
    require(encoding == 1 || encoding == 4, "boxes: encoding must be 1 or 4");
    int default_marbles = spec.get("marbles", -1);
    vector<int> marbles(k);
    for (int i = 0; i < k; ++i) {
        marbles[i] = spec.get("marbles" + to_string(i + 1), default_marbles);
        require(marbles[i] >= 1, "boxes: marbles must be >= 1 for every box");
    }
    Builder b("boxes_enc" + to_string(encoding), spec);
    auto box = [](int i) {return "b" + to_string(i + 1);};
    auto marble = [](int i, int j) {
        return "q" + to_string(i + 1) + "_" + to_string(j + 1);
    };

    vector<AtomId> init, goal;
    for (int i = 0; i < k; ++i) {
        init.push_back(b.atom("ontable(" + box(i) + ")"));
        goal.push_back(b.atom("removed(" + box(i) + ")"));
        for (int j = 0; j < marbles[i]; ++j)
            init.push_back(b.atom("in(" + marble(i, j) + "," + box(i) + ")"));
    }

    if (encoding == 1) {
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < marbles[i]; ++j) {
                GroundAction &take = b.action("take(" + marble(i, j) + "," + box(i) + ")");
                take.pre = {b.atom("in(" + marble(i, j) + "," + box(i) + ")"),
                            b.atom("ontable(" + box(i) + ")")};
                take.add = {b.atom("out(" + marble(i, j) + "," + box(i) + ")")};
                take.del = {b.atom("in(" + marble(i, j) + "," + box(i) + ")")};
            }
            GroundAction &putaway = b.action("putaway(" + box(i) + ")");
            putaway.pre = {b.atom("ontable(" + box(i) + ")")};
            for (int j = 0; j < marbles[i]; ++j)
                putaway.pre.push_back(b.atom("out(" + marble(i, j) + "," + box(i) + ")"));
            putaway.add = {b.atom("removed(" + box(i) + ")")};
            putaway.del = {b.atom("ontable(" + box(i) + ")")};
        }
        return b.finish(init, goal);
    }

    // Encoding 4 adds counter atoms cnt(b,c) per box plus the two derived
    // counters m(v) (marbles in a least-filled box on the table, 0 when no
    // box is left) and n(v) (boxes left). Actions are grounded per count
    // profile so the counter updates stay exact.
    for (int i = 0; i < k; ++i)
        init.push_back(b.atom("cnt(" + box(i) + "," + to_string(marbles[i]) + ")"));
    init.push_back(b.atom("m(" + to_string(*min_element(marbles.begin(), marbles.end())) + ")"));
    init.push_back(b.atom("n(" + to_string(k) + ")"));

    // Enumerate contexts: which boxes are still on the table and their counts.
    // Boxes not on the table have count 0.
    vector<vector<int>> profiles;
    vector<int> current(k, 0);
    auto enumerate = [&](auto &&self, int i) -> void {
        if (i == k) {
            profiles.push_back(current);
            return;
        }
        // -1 encodes a removed box.
        for (int c = -1; c <= marbles[i]; ++c) {
            current[i] = c;
            self(self, i + 1);
        }
    };
    enumerate(enumerate, 0);

    auto min_on_table = [&](const vector<int> &profile) {
        int best = -1;
        for (int c : profile)
            if (c >= 0 && (best < 0 || c < best))
                best = c;
        return best < 0 ? 0 : best;
    };
    auto context_pre = [&](Builder &bb, const vector<int> &profile, vector<AtomId> &pre) {
        for (int i = 0; i < k; ++i) {
            if (profile[i] < 0) {
                pre.push_back(bb.atom("removed(" + box(i) + ")"));
            } else {
                pre.push_back(bb.atom("ontable(" + box(i) + ")"));
                pre.push_back(bb.atom("cnt(" + box(i) + "," + to_string(profile[i]) + ")"));
            }
        }
    };

    for (const vector<int> &profile : profiles) {
        int boxes_left = 0;
        for (int c : profile)
            if (c >= 0)
                ++boxes_left;
        int old_min = min_on_table(profile);

        for (int i = 0; i < k; ++i) {
            if (profile[i] <= 0)
                continue;
            // Taking any marble of box i behaves the same; ground one action
            // per marble so that the in() atoms stay exact.
            vector<int> next = profile;
            --next[i];
            int new_min = min_on_table(next);
            for (int j = 0; j < marbles[i]; ++j) {
                string ctx;
                for (int c : profile)
                    ctx += "_" + (c < 0 ? string("r") : to_string(c));
                GroundAction &take =
                    b.action("take(" + marble(i, j) + "," + box(i) + ctx + ")");
                take.pre = {b.atom("in(" + marble(i, j) + "," + box(i) + ")")};
                context_pre(b, profile, take.pre);
                take.del = {b.atom("in(" + marble(i, j) + "," + box(i) + ")"),
                            b.atom("cnt(" + box(i) + "," + to_string(profile[i]) + ")")};
                take.add = {b.atom("cnt(" + box(i) + "," + to_string(profile[i] - 1) + ")")};
                if (new_min != old_min) {
                    take.del.push_back(b.atom("m(" + to_string(old_min) + ")"));
                    take.add.push_back(b.atom("m(" + to_string(new_min) + ")"));
                }
            }
        }

        for (int i = 0; i < k; ++i) {
            if (profile[i] != 0)
                continue;
            vector<int> next = profile;
            next[i] = -1;
            int new_min = min_on_table(next);
            string ctx;
            for (int c : profile)
                ctx += "_" + (c < 0 ? string("r") : to_string(c));
            GroundAction &putaway = b.action("putaway(" + box(i) + ctx + ")");
            context_pre(b, profile, putaway.pre);
            putaway.pre.push_back(b.atom("n(" + to_string(boxes_left) + ")"));
            putaway.del = {b.atom("ontable(" + box(i) + ")"),
                           b.atom("n(" + to_string(boxes_left) + ")")};
            putaway.add = {b.atom("removed(" + box(i) + ")"),
                           b.atom("n(" + to_string(boxes_left - 1) + ")")};
            if (new_min != old_min) {
                putaway.del.push_back(b.atom("m(" + to_string(old_min) + ")"));
                putaway.add.push_back(b.atom("m(" + to_string(new_min) + ")"));
            }
        }
    }
    return b.finish(init, goal);
}

void add_grid_moves(Builder &b, int w, int h,
                    const std::function<void(GroundAction &, int, int, int, int)> &fill) {
    const int dx[] = {1, -1, 0, 0};
    const int dy[] = {0, 0, 1, -1};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int dir = 0; dir < 4; ++dir) {
                int nx = x + dx[dir], ny = y + dy[dir];
                if (nx < 0 || nx >= w || ny < 0 || ny >= h)
                    continue;
                GroundAction &move =
                    b.action("move(" + cell_name(x, y) + "," + cell_name(nx, ny) + ")");
                fill(move, x, y, nx, ny);
            }
        }
    }
}

GroundProblem generate_delivery(const DomainSpec &spec) {
    set<string> allowed = {"w", "h", "packages", "ax", "ay", "tx", "ty"};
    int packages = spec.get("packages", 1);
    require(packages >= 1 && packages <= 4, "delivery: packages must be in 1..4");
    for (int i = 1; i <= packages; ++i) {
        allowed.insert("px" + to_string(i));
        allowed.insert("py" + to_string(i));
    }
    check_keys(spec, allowed);
    int w = spec.get("w", -1), h = spec.get("h", -1);
    require(w >= 1 && h >= 1, "delivery: w and h must be >= 1");
    require(w * h >= 2, "delivery: grid needs at least two cells");

    int ax = spec.get("ax", 0), ay = spec.get("ay", 0);
    int tx = spec.get("tx", w - 1), ty = spec.get("ty", h - 1);
    // Default package placements spread over the remaining corners.
    int defaults[4][2] = {{w - 1, 0}, {0, h - 1}, {w / 2, h / 2}, {w / 2, 0}};
    auto in_range = [&](int x, int y) {return x >= 0 && x < w && y >= 0 && y < h;};
    require(in_range(ax, ay) && in_range(tx, ty), "delivery: coordinates out of range");

    Builder b("delivery_" + to_string(w) + "x" + to_string(h) + "_p" + to_string(packages),
              spec);
    add_grid_moves(b, w, h, [&](GroundAction &move, int x, int y, int nx, int ny) {
        move.pre = {b.atom("at(" + cell_name(x, y) + ")")};
        move.add = {b.atom("at(" + cell_name(nx, ny) + ")")};
        move.del = {b.atom("at(" + cell_name(x, y) + ")")};
    });

    vector<AtomId> init = {b.atom("at(" + cell_name(ax, ay) + ")"), b.atom("empty"),
                           b.atom("target(" + cell_name(tx, ty) + ")")};
    vector<AtomId> goal;
    for (int i = 0; i < packages; ++i) {
        string pkg = "p" + to_string(i + 1);
        int px = spec.get("px" + to_string(i + 1), defaults[i][0]);
        int py = spec.get("py" + to_string(i + 1), defaults[i][1]);
        require(in_range(px, py), "delivery: package coordinates out of range");
        init.push_back(b.atom("atp(" + pkg + "," + cell_name(px, py) + ")"));
        goal.push_back(b.atom("atp(" + pkg + "," + cell_name(tx, ty) + ")"));
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                string cell = cell_name(x, y);
                GroundAction &pick = b.action("pick(" + pkg + "," + cell + ")");
                pick.pre = {b.atom("at(" + cell + ")"), b.atom("atp(" + pkg + "," + cell + ")"),
                            b.atom("empty")};
                pick.add = {b.atom("hold(" + pkg + ")")};
                pick.del = {b.atom("atp(" + pkg + "," + cell + ")"), b.atom("empty")};

                GroundAction &drop = b.action("drop(" + pkg + "," + cell + ")");
                drop.pre = {b.atom("at(" + cell + ")"), b.atom("hold(" + pkg + ")")};
                drop.add = {b.atom("atp(" + pkg + "," + cell + ")"), b.atom("empty")};
                drop.del = {b.atom("hold(" + pkg + ")")};
            }
        }
    }
    return b.finish(init, goal);
}

GroundProblem generate_visitall(const DomainSpec &spec) {
    check_keys(spec, {"w", "h", "sx", "sy"});
    int w = spec.get("w", -1), h = spec.get("h", -1);
    require(w >= 1 && h >= 1, "visitall: w and h must be >= 1");
    int sx = spec.get("sx", 0), sy = spec.get("sy", 0);
    require(sx >= 0 && sx < w && sy >= 0 && sy < h, "visitall: start out of range");

    Builder b("visitall_" + to_string(w) + "x" + to_string(h), spec);
    add_grid_moves(b, w, h, [&](GroundAction &move, int x, int y, int nx, int ny) {
        move.pre = {b.atom("at(" + cell_name(x, y) + ")")};
        move.add = {b.atom("at(" + cell_name(nx, ny) + ")"),
                    b.atom("visited(" + cell_name(nx, ny) + ")")};
        move.del = {b.atom("at(" + cell_name(x, y) + ")")};
    });
    vector<AtomId> init = {b.atom("at(" + cell_name(sx, sy) + ")"),
                           b.atom("visited(" + cell_name(sx, sy) + ")")};
    vector<AtomId> goal;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            goal.push_back(b.atom("visited(" + cell_name(x, y) + ")"));
    return b.finish(init, goal);
}

GroundProblem generate_grid(const DomainSpec &spec) {
    check_keys(spec, {"w", "h", "sx", "sy", "gx", "gy"});
    int w = spec.get("w", -1), h = spec.get("h", -1);
    require(w >= 1 && h >= 1, "grid: w and h must be >= 1");
    int sx = spec.get("sx", 0), sy = spec.get("sy", 0);
    int gx = spec.get("gx", w - 1), gy = spec.get("gy", h - 1);
    require(sx >= 0 && sx < w && sy >= 0 && sy < h, "grid: start out of range");
    require(gx >= 0 && gx < w && gy >= 0 && gy < h, "grid: goal out of range");

    Builder b("grid_" + to_string(w) + "x" + to_string(h), spec);
    for (int i = 0; i < w; ++i) {
        if (i + 1 < w) {
            GroundAction &right = b.action("xinc(" + to_string(i) + ")");
            right.pre = {b.atom("x(" + to_string(i) + ")")};
            right.add = {b.atom("x(" + to_string(i + 1) + ")")};
            right.del = {b.atom("x(" + to_string(i) + ")")};
            GroundAction &left = b.action("xdec(" + to_string(i + 1) + ")");
            left.pre = {b.atom("x(" + to_string(i + 1) + ")")};
            left.add = {b.atom("x(" + to_string(i) + ")")};
            left.del = {b.atom("x(" + to_string(i + 1) + ")")};
        }
    }
    for (int j = 0; j < h; ++j) {
        if (j + 1 < h) {
            GroundAction &up = b.action("yinc(" + to_string(j) + ")");
            up.pre = {b.atom("y(" + to_string(j) + ")")};
            up.add = {b.atom("y(" + to_string(j + 1) + ")")};
            up.del = {b.atom("y(" + to_string(j) + ")")};
            GroundAction &down = b.action("ydec(" + to_string(j + 1) + ")");
            down.pre = {b.atom("y(" + to_string(j + 1) + ")")};
            down.add = {b.atom("y(" + to_string(j) + ")")};
            down.del = {b.atom("y(" + to_string(j + 1) + ")")};
        }
    }
    vector<AtomId> init = {b.atom("x(" + to_string(sx) + ")"),
                           b.atom("y(" + to_string(sy) + ")")};
    vector<AtomId> goal = {b.atom("x(" + to_string(gx) + ")"),
                           b.atom("y(" + to_string(gy) + ")")};
    return b.finish(init, goal);
}

}

GroundProblem generate(const DomainSpec &spec) {
    if (spec.name == "blocks_clear")
        return generate_blocks_clear(spec);
    if (spec.name == "blocks_on")
        return generate_blocks_on(spec);
    if (spec.name == "boxes")
        return generate_boxes(spec);
    if (spec.name == "delivery")
        return generate_delivery(spec);
    if (spec.name == "visitall")
        return generate_visitall(spec);
    if (spec.name == "grid")
        return generate_grid(spec);
    throw InvalidParams("unknown domain: " + spec.name);
}

}
