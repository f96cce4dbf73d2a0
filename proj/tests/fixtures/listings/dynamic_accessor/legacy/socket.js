function Socket(conn) {
  this.conn = conn;
  this.flags = {};
}

var flags = ['broadcast', 'volatile'];
flags.forEach(function(flag) {
  Socket.prototype.__defineGetter__(flag, function() {
    this.flags[flag] = true;
    return this;
  });
});
