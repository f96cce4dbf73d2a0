class Namespace {
  constructor(name) {
    this.name = name;
  }
  qualify(id) {
    return this.name + ':' + id;
  }
}
module.exports = Namespace;
