#include "wheelq/wheel.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <utility>

#include "text_util.hpp"

namespace wheelq {

namespace {

void check_site_token(const SiteId& s) {
    if (s.empty()) throw DomainError("site token must be non-empty");
    for (unsigned char c : s) {
        if (std::isspace(c) || std::iscntrl(c))
            throw DomainError("site token '" + s + "' contains whitespace");
    }
}

}  // namespace

Wheel Wheel::build(int n, std::vector<SiteId> sites) {
    std::vector<NodeId> wiring;
    if (n >= 2) {
        for (NodeId i = 1; i < n; ++i) wiring.push_back(i == n - 1 ? 1 : i + 1);
    }
    return build(n, std::move(sites), wiring);
}

Wheel Wheel::build(int n, std::vector<SiteId> sites,
                   const std::vector<NodeId>& suc_override) {
    if (n < kMinWheelSize)
        throw DomainError("wheel needs at least " + std::to_string(kMinWheelSize) + " nodes");
    if (static_cast<int>(sites.size()) != n)
        throw DomainError("expected " + std::to_string(n) + " sites, got " +
                          std::to_string(sites.size()));
    {
        std::set<SiteId> distinct;
        for (const auto& s : sites) {
            check_site_token(s);
            if (!distinct.insert(s).second)
                throw DomainError("duplicate site '" + s + "'");
        }
    }
    if (static_cast<int>(suc_override.size()) != n - 1)
        throw DomainError("successor wiring must list " + std::to_string(n - 1) + " entries");

    Wheel w;
    w.nodes_.resize(n);
    for (NodeId i = 0; i < n; ++i) {
        w.nodes_[i].id = i;
        w.nodes_[i].node_location = std::move(sites[i]);
        w.nodes_[i].hub = kHubId;
    }
    for (NodeId i = 1; i < n; ++i) {
        const NodeId s = suc_override[i - 1];
        if (s < 1 || s > n - 1)
            throw DomainError("successor of node " + std::to_string(i) + " is out of the cycle");
        w.nodes_[i].suc = s;
    }
    // The wiring must be a single cycle covering 1..n-1; walking n-1 steps
    // from node 1 has to visit each cycle node once and land back on 1.
    {
        std::set<NodeId> seen;
        NodeId cur = 1;
        for (int step = 0; step < n - 1; ++step) {
            if (!seen.insert(cur).second)
                throw DomainError("successor wiring revisits node " + std::to_string(cur));
            cur = w.nodes_[cur].suc;
        }
        if (cur != 1 || static_cast<int>(seen.size()) != n - 1)
            throw DomainError("successor wiring does not form a single cycle over 1.." +
                              std::to_string(n - 1));
    }
    for (NodeId i = 1; i < n; ++i) w.nodes_[w.nodes_[i].suc].pred = i;
    return w;
}

void Wheel::check_id(NodeId i) const {
    if (i < 0 || i >= size())
        throw DomainError("node ID " + std::to_string(i) + " out of range");
}

void Wheel::check_cycle_id(NodeId i) const {
    check_id(i);
    if (i == kHubId)
        throw DomainError("hub is not a cycle member");
}

NodeId Wheel::suc(NodeId i) const {
    check_cycle_id(i);
    return nodes_[i].suc;
}

NodeId Wheel::pred(NodeId i) const {
    check_cycle_id(i);
    return nodes_[i].pred;
}

const SiteId& Wheel::resolve(NodeId i) const {
    check_id(i);
    return nodes_[i].node_location;
}

const NodeRecord& Wheel::node(NodeId i) const {
    check_id(i);
    return nodes_[i];
}

void Wheel::swap_locations(NodeId a, NodeId b) {
    check_id(a);
    check_id(b);
    std::swap(nodes_[a].node_location, nodes_[b].node_location);
}

std::vector<SiteId> Wheel::locations() const {
    std::vector<SiteId> out;
    out.reserve(nodes_.size());
    for (const auto& rec : nodes_) out.push_back(rec.node_location);
    return out;
}

std::string Wheel::to_config() const {
    std::ostringstream os;
    os << "wheelq-wheel v1\n";
    os << "n " << size() << "\n";
    os << "sites";
    for (const auto& rec : nodes_) os << ' ' << rec.node_location;
    os << "\n";
    os << "suc";
    for (NodeId i = 1; i < size(); ++i) os << ' ' << nodes_[i].suc;
    os << "\n";
    return os.str();
}

Wheel Wheel::parse_config(std::istream& in) {
    const auto rows = text::tokenize_lines(in);
    if (rows.empty() || rows[0] != std::vector<std::string>{"wheelq-wheel", "v1"})
        throw DomainError("missing 'wheelq-wheel v1' header");

    int n = 0;
    std::vector<SiteId> sites;
    std::vector<NodeId> suc;
    bool have_n = false;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row[0] == "n" && row.size() == 2) {
            n = text::parse_int(row[1], "n");
            have_n = true;
        } else if (row[0] == "sites") {
            sites.assign(row.begin() + 1, row.end());
        } else if (row[0] == "suc") {
            suc.clear();
            for (std::size_t k = 1; k < row.size(); ++k)
                suc.push_back(text::parse_int(row[k], "suc entry"));
        } else {
            throw DomainError("unknown wheel config line '" + row[0] + "'");
        }
    }
    if (!have_n) throw DomainError("wheel config missing n");
    if (sites.empty()) {
        for (int i = 0; i < n; ++i) sites.push_back("s" + std::to_string(i));
    }
    if (suc.empty()) return build(n, std::move(sites));
    return build(n, std::move(sites), suc);
}

Wheel Wheel::parse_config(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is);
}

}  // namespace wheelq
