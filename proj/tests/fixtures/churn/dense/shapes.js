function Point(x, y) {
  this.x = x;
  this.y = y;
}
Point.prototype.norm = function() {
  return Math.sqrt(this.x * this.x + this.y * this.y);
};
Point.prototype.scale = function(k) {
  return new Point(this.x * k, this.y * k);
};
Point.prototype.add = function(o) {
  return new Point(this.x + o.x, this.y + o.y);
};
Point.prototype.toString = function() {
  return '(' + this.x + ', ' + this.y + ')';
};

function Segment(a, b) {
  Point.call(this, b.x - a.x, b.y - a.y);
  this.a = a;
  this.b = b;
}
Segment.prototype = new Point();
Segment.prototype.length = function() {
  return this.norm();
};
Segment.prototype.midpoint = function() {
  return this.a.add(this.b).scale(0.5);
};
Segment.prototype.toString = function() {
  return this.a.toString() + ' -> ' + this.b.toString();
};

function clamp(v, lo, hi) {
  return v < lo ? lo : v > hi ? hi : v;
}
