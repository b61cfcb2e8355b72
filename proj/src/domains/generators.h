#ifndef DOMAINS_GENERATORS_H
#define DOMAINS_GENERATORS_H

#include "../core/problem.h"

#include <map>
#include <string>

namespace wbp {

/*
  Built-in instance generators:

    blocks_clear  params: blocks (tower size above x)
    blocks_on     params: height (two towers of that size; goal on(x,y))
                  or blocks + seed (random towers; goal is a single target tower)
    boxes         params: boxes, marbles, encoding (1 or 4),
                  optional marbles1..marblesK per-box overrides
    delivery     params: w, h, packages, optional ax, ay, tx, ty, px1, py1, ...
    visitall      params: w, h, optional sx, sy
    grid          params: w, h, optional sx, sy, gx, gy

  Generation is deterministic for a given spec.
*/
struct DomainSpec {
    std::string name;
    std::map<std::string, int> params;

    int get(const std::string &key, int fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }
    bool has(const std::string &key) const {
        return params.count(key);
    }
};

GroundProblem generate(const DomainSpec &spec);

// Canonical cell object name, e.g. c2_3.
std::string cell_name(int x, int y);

}

#endif
