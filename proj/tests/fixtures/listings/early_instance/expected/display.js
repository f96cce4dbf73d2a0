var _tempDisplayObjectParent = null;

class DisplayObject {
  constructor() {
    this.parent = null;
  }
  getBounds(targetCoordinateSpace) {
    this.parent = _tempDisplayObjectParent;
    return targetCoordinateSpace || this.parent;
  }
}
_tempDisplayObjectParent = new DisplayObject();
