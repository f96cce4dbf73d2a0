module.exports = Namespace;

function Namespace(name) {
  this.name = name;
}
Namespace.prototype.qualify = function(id) {
  return this.name + ':' + id;
};
