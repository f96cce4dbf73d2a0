function Logger(prefix) {
  this.prefix = prefix;
  this.level = 0;
  this.lines = [];
}
Logger.prototype.format = function(level, msg) {
  var head = '[' + this.prefix + ']';
  if (level > this.level) {
    head = head + '!';
  }
  var text = head + ' ' + msg;
  this.lines.push(text);
  return text;
};

function pad(s, n) {
  while (s.length < n) s = s + ' ';
  return s;
}

function trimEnds(s) {
  var start = 0;
  var end = s.length;
  while (start < end && s[start] === ' ') start++;
  while (end > start && s[end - 1] === ' ') end--;
  return s.slice(start, end);
}

function repeat(s, n) {
  var out = '';
  for (var i = 0; i < n; i++) out += s;
  return out;
}

function lines(s) {
  return s.split('\n');
}

function capitalize(s) {
  return s.length ? s[0].toUpperCase() + s.slice(1) : s;
}

function startsWith(s, prefix) {
  return s.slice(0, prefix.length) === prefix;
}

function endsWith(s, suffix) {
  return suffix.length === 0 || s.slice(-suffix.length) === suffix;
}

function countOf(s, ch) {
  var n = 0;
  for (var i = 0; i < s.length; i++) {
    if (s[i] === ch) n++;
  }
  return n;
}
