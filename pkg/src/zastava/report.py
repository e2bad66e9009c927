"""Verification reports: ordered lists of checked instances, serializable to JSON."""

import json


class Report:
    def __init__(self, title, entries=None, info=None):
        self.title = title
        self.entries = list(entries or [])
        self.info = dict(info or {})

    def add(self, relation, instance, ok, witness=None, **extra):
        e = {"relation": relation, "instance": instance,
             "status": "pass" if ok else "fail", "witness-degree": witness}
        e.update(extra)
        self.entries.append(e)
        return ok

    def extend(self, other):
        self.entries.extend(other.entries)
        for k, v in other.info.items():
            self.info.setdefault(k, v)
        return self

    @property
    def ok(self):
        return all(e["status"] == "pass" for e in self.entries)

    def failures(self):
        return [e for e in self.entries if e["status"] != "pass"]

    def counts(self):
        out = {}
        for e in self.entries:
            c = out.setdefault(e["relation"], [0, 0])
            c[0 if e["status"] == "pass" else 1] += 1
        return out

    def to_dict(self):
        return {"title": self.title, "ok": self.ok, "info": self.info, "entries": self.entries}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary(self):
        lines = [f"{self.title}: {'PASS' if self.ok else 'FAIL'} ({len(self.entries)} instances)"]
        for rel, (p, f) in sorted(self.counts().items()):
            lines.append(f"  {rel}: {p} pass, {f} fail")
        for k, v in sorted(self.info.items()):
            lines.append(f"  {k}: {v}")
        return "\n".join(lines)

    def __repr__(self):
        return f"Report({self.title!r}, {len(self.entries)} entries, ok={self.ok})"
